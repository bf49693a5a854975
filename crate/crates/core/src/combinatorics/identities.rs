//! Exact checks of the classical Stirling-number identities and of two
//! auxiliary lemmas (an alternating binomial power sum and a polynomial
//! identity in two variables). Each check takes the tables it reads so that a
//! perturbed table can be passed in.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{harmonic, StirlingKind, StirlingTable};
use crate::arith::{big, binomial, factorial, fmt_rat, int, Poly, RatSeries, Rational};
use crate::report::VerificationReport;

fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

struct R(Rational);

impl PartialEq for R {
    fn eq(&self, o: &Self) -> bool {
        self.0 == o.0
    }
}

impl std::fmt::Display for R {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&fmt_rat(&self.0))
    }
}

/// Boundary values, both recurrences and the vanishing above the diagonal.
pub fn check_recurrence(table: &StirlingTable) -> VerificationReport {
    let max = table.max();
    let name = match table.kind() {
        StirlingKind::First => "stirling-first-recurrence",
        StirlingKind::Second => "stirling-second-recurrence",
    };
    let anchor = match table.kind() {
        StirlingKind::First => "[m+1 n] = [m n-1] + m[m n], [m 0] = [0 m] = delta_{m,0}",
        StirlingKind::Second => "{m+1 n} = {m n-1} + n{m n}, {m 0} = {0 m} = delta_{m,0}",
    };
    let mut pairs = Vec::new();
    for m in 0..=max {
        let delta = if m == 0 { int(1) } else { int(0) };
        pairs.push((m, Some(format!("({m},0)")), R(table.get(m, 0)), R(delta.clone())));
        pairs.push((m, Some(format!("(0,{m})")), R(table.get(0, m)), R(delta)));
        for n in m + 1..=max + 1 {
            if m >= 1 {
                pairs.push((m, Some(format!("({m},{n})")), R(table.get(m, n)), R(int(0))));
            }
        }
        if m >= 1 {
            for n in 1..=m {
                let mult = match table.kind() {
                    StirlingKind::First => int(m as i64 - 1),
                    StirlingKind::Second => int(n as i64),
                };
                let rhs = table.get(m - 1, n - 1) + mult * table.get(m - 1, n);
                pairs.push((m, Some(format!("({m},{n})")), R(table.get(m, n)), R(rhs)));
            }
        }
    }
    VerificationReport::new(name, anchor, max)
        .param("max", max)
        .compare_exact_located(pairs)
}

/// `(e^T - 1)^m / m! = sum_n {n m} T^n / n!`, compared coefficientwise in `T`.
pub fn check_second_kind_exp(second: &StirlingTable, m_max: usize, n_max: usize) -> VerificationReport {
    let coeffs: Vec<Rational> = (0..=n_max)
        .map(|n| if n == 0 { int(0) } else { Rational::new(BigInt::one(), factorial(n)) })
        .collect();
    let base = RatSeries::from_rationals(n_max, &coeffs);
    let mut pairs = Vec::new();
    for m in 1..=m_max {
        let pw = base.pow(m).scale(&Rational::new(BigInt::one(), factorial(m)));
        for n in 0..=n_max {
            let lhs = pw.rational_coeff(n) * big(&factorial(n));
            pairs.push((n, Some(format!("m={m}")), R(lhs), R(second.get(n, m))));
        }
    }
    VerificationReport::new(
        "stirling-second-exp",
        "(e^T - 1)^m/m! = sum_{n>=1} {n m} T^n/n!",
        n_max,
    )
    .param("m_max", m_max)
    .compare_exact_located(pairs)
}

/// `(-log(1 - T))^m / m! = sum_n [n m] T^n / n!`.
pub fn check_first_kind_log(first: &StirlingTable, m_max: usize, n_max: usize) -> VerificationReport {
    let coeffs: Vec<Rational> = (0..=n_max)
        .map(|n| if n == 0 { int(0) } else { Rational::new(BigInt::one(), BigInt::from(n)) })
        .collect();
    let base = RatSeries::from_rationals(n_max, &coeffs);
    let mut pairs = Vec::new();
    for m in 1..=m_max {
        let pw = base.pow(m).scale(&Rational::new(BigInt::one(), factorial(m)));
        for n in 0..=n_max {
            let lhs = pw.rational_coeff(n) * big(&factorial(n));
            pairs.push((n, Some(format!("m={m}")), R(lhs), R(first.get(n, m))));
        }
    }
    VerificationReport::new(
        "stirling-first-log",
        "(-log(1-T))^m/m! = sum_{n>=1} [n m] T^n/n!",
        n_max,
    )
    .param("m_max", m_max)
    .compare_exact_located(pairs)
}

/// `sum_j (-1)^j {m j}[j n] = (-1)^m delta_{m,n}`.
pub fn check_duality(first: &StirlingTable, second: &StirlingTable, max: usize) -> VerificationReport {
    let mut pairs = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            let lhs = (0..=m).fold(Rational::zero(), |acc, j| {
                acc + sign(j) * second.get(m, j) * first.get(j, n)
            });
            let rhs = if m == n { sign(m) } else { int(0) };
            pairs.push((m, Some(format!("(m,n)=({m},{n})")), R(lhs), R(rhs)));
        }
    }
    VerificationReport::new("stirling-duality", "sum_j (-1)^j {m j}[j n] = (-1)^m delta_{m,n}", max)
        .compare_exact_located(pairs)
}

/// `prod_{a=1}^m (z + a) = sum_{a=0}^m [m+1 a+1] z^a` as polynomials.
pub fn check_shifted_factorial(first: &StirlingTable, max: usize) -> VerificationReport {
    let mut pairs = Vec::new();
    for m in 0..=max {
        let prod = (1..=m).fold(Poly::one(), |acc, a| &acc * &Poly::new(vec![int(a as i64), int(1)]));
        for a in 0..=m {
            pairs.push((a, Some(format!("m={m}")), R(prod.coeff(a)), R(first.get(m + 1, a + 1))));
        }
    }
    VerificationReport::new("stirling-shifted-factorial", "prod_{a=1}^m (z+a) = sum_a [m+1 a+1] z^a", max)
        .compare_exact_located(pairs)
}

/// `sum_{l=0}^n (-1)^l binom(n,l) l^m = (-1)^n n! {m n}` (with `0^0 = 1`).
pub fn check_binomial_power_sum(second: &StirlingTable, max: usize) -> VerificationReport {
    let mut pairs = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            let lhs = (0..=n).fold(BigInt::zero(), |acc, l| {
                let term = binomial(n, l) * BigInt::from(l).pow(m as u32);
                if l % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            });
            let rhs = sign(n) * big(&factorial(n)) * second.get(m, n);
            pairs.push((m, Some(format!("(m,n)=({m},{n})")), R(big(&lhs)), R(rhs)));
        }
    }
    VerificationReport::new(
        "stirling-binomial-power-sum",
        "sum_l (-1)^l binom(n,l) l^m = (-1)^n n! {m n}",
        max,
    )
    .compare_exact_located(pairs)
}

/// `[l 1] = (l-1)!` and `[l k] = (l-1)! sum_{l>m_1>...>m_{k-1}>0} 1/(m_1...m_{k-1})`.
pub fn check_first_kind_harmonic(first: &StirlingTable, l_max: usize, k_max: usize) -> VerificationReport {
    let mut pairs = Vec::new();
    for l in 1..=l_max {
        for k in 1..=k_max {
            let rhs = big(&factorial(l - 1)) * harmonic(k - 1, l);
            pairs.push((l, Some(format!("(l,k)=({l},{k})")), R(first.get(l, k)), R(rhs)));
        }
    }
    VerificationReport::new(
        "stirling-first-harmonic",
        "[l k] = (l-1)! sum_{l>m_1>...>m_{k-1}>0} 1/(m_1...m_{k-1})",
        l_max,
    )
    .param("k_max", k_max)
    .compare_exact_located(pairs)
}

/// The Stirling suite over the standard index ranges.
pub fn stirling_suite(first: &StirlingTable, second: &StirlingTable) -> Vec<VerificationReport> {
    vec![
        check_recurrence(first),
        check_recurrence(second),
        check_second_kind_exp(second, 6, 14),
        check_first_kind_log(first, 6, 14),
        check_duality(first, second, 12),
        check_shifted_factorial(first, 10),
        check_binomial_power_sum(second, 10),
        check_first_kind_harmonic(first, 10, 5),
    ]
}

/// Suite with freshly built tables large enough for every range used.
pub fn default_stirling_suite() -> Vec<VerificationReport> {
    let first = StirlingTable::build(StirlingKind::First, 16);
    let second = StirlingTable::build(StirlingKind::Second, 16);
    stirling_suite(&first, &second)
}

/// `sum_{k=0}^n (-1)^k binom(n,k) (k+1)^m = (-1)^n n! {m+1 n+1}` for
/// `0 <= m <= max`, `1 <= n <= max`, together with the truncated form
/// `sum_{k=0}^{n-1} (-1)^k binom(n,k)(k+1)^m = (-1)^{n-1}(n+1)^m` for `n > m`.
pub fn check_shifted_power_sum(second: &StirlingTable, max: usize) -> VerificationReport {
    let mut pairs = Vec::new();
    for m in 0..=max {
        for n in 1..=max {
            let term = |k: usize| {
                let t = big(&(binomial(n, k) * BigInt::from(k + 1).pow(m as u32)));
                sign(k) * t
            };
            let full = (0..=n).fold(Rational::zero(), |a, k| a + term(k));
            let rhs = sign(n) * big(&factorial(n)) * second.get(m + 1, n + 1);
            pairs.push((m, Some(format!("(m,n)=({m},{n})")), R(full), R(rhs)));
            if n > m {
                let partial = (0..n).fold(Rational::zero(), |a, k| a + term(k));
                let rhs = sign(n - 1) * big(&BigInt::from(n + 1).pow(m as u32));
                pairs.push((m, Some(format!("truncated (m,n)=({m},{n})")), R(partial), R(rhs)));
            }
        }
    }
    VerificationReport::new(
        "shifted-power-sum",
        "sum_{k=0}^n (-1)^k binom(n,k)(k+1)^m = (-1)^n n! {m+1 n+1}",
        max,
    )
    .compare_exact_located(pairs)
}

/// Polynomial in `x, y` keyed by `(deg_x, deg_y)`.
#[derive(Clone, Debug, Default, PartialEq)]
struct BiPoly(BTreeMap<(usize, usize), Rational>);

impl BiPoly {
    fn one() -> Self {
        Self::term(int(1), 0, 0)
    }

    fn term(c: Rational, dx: usize, dy: usize) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((dx, dy), c);
        }
        Self(m)
    }

    /// `cx * x + cy * y + c0`.
    fn linear(cx: Rational, cy: Rational, c0: Rational) -> Self {
        Self::term(cx, 1, 0).add(&Self::term(cy, 0, 1)).add(&Self::term(c0, 0, 0))
    }

    fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert_with(Rational::zero);
            *e += v;
            if e.is_zero() {
                m.remove(k);
            }
        }
        Self(m)
    }

    fn scale(&self, c: &Rational) -> Self {
        Self(self.0.iter().filter(|_| !c.is_zero()).map(|(k, v)| (*k, v * c)).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for ((ax, ay), a) in &self.0 {
            for ((bx, by), b) in &o.0 {
                out = out.add(&Self::term(a * b, ax + bx, ay + by));
            }
        }
        out
    }
}

impl std::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|((dx, dy), c)| format!("{}*x^{dx}*y^{dy}", fmt_rat(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(prod_{a=1}^n (x-a) - prod_{a=1}^n (y-a)) / (x - y)
///   = sum_{k=0}^{n-1} binom(n,k) prod_{a=1}^k (c_k y - a) prod_{a=1}^{n-1-k} (x - c_k y - a)`
/// with `c_k = (k+1)/(n+1)`, expanded exactly in `x, y`.
pub fn check_difference_quotient_identity(n_max: usize) -> VerificationReport {
    let mut pairs = Vec::new();
    for n in 0..=n_max {
        // coefficients of prod_{a=1}^n (t - a)
        let falling = (1..=n).fold(Poly::one(), |acc, a| &acc * &Poly::new(vec![int(-(a as i64)), int(1)]));
        // (A(x) - A(y))/(x - y) = sum_j a_j sum_{i<j} x^i y^{j-1-i}
        let mut lhs = BiPoly::default();
        for (j, a) in falling.coeffs().iter().enumerate() {
            for i in 0..j {
                lhs = lhs.add(&BiPoly::term(a.clone(), i, j - 1 - i));
            }
        }
        let mut rhs = BiPoly::default();
        for k in 0..n {
            let c = Rational::new(BigInt::from(k + 1), BigInt::from(n + 1));
            let mut t = BiPoly::one().scale(&big(&binomial(n, k)));
            for a in 1..=k {
                t = t.mul(&BiPoly::linear(int(0), c.clone(), int(-(a as i64))));
            }
            for a in 1..n - k {
                t = t.mul(&BiPoly::linear(int(1), -c.clone(), int(-(a as i64))));
            }
            rhs = rhs.add(&t);
        }
        pairs.push((n, None, lhs, rhs));
    }
    VerificationReport::new(
        "difference-quotient-identity",
        "(prod(x-a) - prod(y-a))/(x-y) = sum_k binom(n,k) prod(c_k y - a) prod(x - c_k y - a)",
        n_max,
    )
    .compare_exact_located(pairs)
}
