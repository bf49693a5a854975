use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, Param, Poly, Rational};
use crate::error::{Error, Result};

/// Truncated power series `sum_{n=0}^{order} c_n X^n` whose coefficients are
/// polynomials in (at most) one commuting parameter.
///
/// Coefficients `0..=order` are exact; everything of degree above `order` has
/// been discarded. Binary operations return a series of the smaller order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSeries {
    order: usize,
    param: Option<Param>,
    /// Optional cap on the parameter degree kept in each coefficient.
    param_cap: Option<usize>,
    coeffs: Vec<Poly>,
}

fn merge_param(a: Option<Param>, b: Option<Param>) -> Result<Option<Param>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::ParamMismatch { left: a, right: b }),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        (None, None) => Ok(None),
    }
}

fn merge_cap(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

impl RatSeries {
    /// Builds a series from coefficient polynomials; missing coefficients are
    /// zero and coefficients past `order` are dropped.
    pub fn new(order: usize, param: Option<Param>, coeffs: Vec<Poly>) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, Poly::zero());
        coeffs.truncate(order + 1);
        if param.is_none() {
            debug_assert!(coeffs.iter().all(Poly::is_constant));
        }
        Self { order, param, param_cap: None, coeffs }
    }

    pub fn from_rationals(order: usize, coeffs: &[Rational]) -> Self {
        Self::new(order, None, coeffs.iter().cloned().map(Poly::constant).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, None, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, None, vec![Poly::one()])
    }

    /// `c * X^n` (zero if `n > order`).
    pub fn monomial(order: usize, n: usize, c: Rational) -> Self {
        let mut coeffs = vec![Poly::zero(); order + 1];
        if n <= order {
            coeffs[n] = Poly::constant(c);
        }
        Self::new(order, None, coeffs)
    }

    /// Discards parameter powers above `cap` after every operation.
    pub fn with_param_cap(mut self, cap: usize) -> Self {
        self.param_cap = Some(cap);
        for c in &mut self.coeffs {
            *c = c.truncate_degree(cap);
        }
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn param(&self) -> Option<Param> {
        self.param
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Constant part of coefficient `n`, i.e. the coefficient of a
    /// parameter-free series.
    pub fn rational_coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).map(Poly::constant_term).unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Smallest `n` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn cap(&self, p: Poly) -> Poly {
        match self.param_cap {
            Some(cap) => p.truncate_degree(cap),
            None => p,
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            order,
            param: self.param,
            param_cap: self.param_cap,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<Self> {
        let param = merge_param(self.param, other.param)?;
        let order = self.order.min(other.order);
        let mut out = Self {
            order,
            param,
            param_cap: merge_cap(self.param_cap, other.param_cap),
            coeffs: Vec::with_capacity(order + 1),
        };
        for n in 0..=order {
            let c = f(&self.coeffs[n], &other.coeffs[n]);
            let c = out.cap(c);
            out.coeffs.push(c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(), ..self.clone() }
    }

    /// Multiplies every coefficient by a polynomial in the series parameter.
    pub fn scale_poly(&self, p: &Poly, param: Param) -> Result<Self> {
        let param = merge_param(self.param, Some(param))?;
        let mut out = Self { param, ..self.clone() };
        out.coeffs = self.coeffs.iter().map(|c| out.cap(c * p)).collect();
        Ok(out)
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let param = merge_param(self.param, other.param)?;
        let order = self.order.min(other.order);
        let param_cap = merge_cap(self.param_cap, other.param_cap);
        let max_deg = param_cap.unwrap_or(usize::MAX - 1);
        let mut coeffs = vec![Poly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &a.mul_truncated(b, max_deg);
            }
        }
        Ok(Self { order, param, param_cap, coeffs })
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self { coeffs: vec![Poly::zero(); self.order + 1], ..self.clone() };
        acc.coeffs[0] = Poly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same parameter");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same parameter");
            }
        }
        acc
    }

    fn require_zero_constant(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    /// `exp(f)` for `f` with zero constant term, via `n a_n = sum k f_k a_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let max_deg = self.param_cap.unwrap_or(usize::MAX - 1);
        let mut a = vec![Poly::zero(); self.order + 1];
        a[0] = Poly::one();
        for n in 1..=self.order {
            let mut acc = Poly::zero();
            for k in 1..=n {
                let f = &self.coeffs[k];
                if f.is_zero() || a[n - k].is_zero() {
                    continue;
                }
                let term = f.mul_truncated(&a[n - k], max_deg).scale(&Rational::from_integer(k.into()));
                acc = &acc + &term;
            }
            a[n] = acc.scale(&Rational::new(BigInt::one(), n.into()));
        }
        Ok(Self { coeffs: a, ..self.clone() })
    }

    /// `log(1 + f)` for `f` with zero constant term.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let max_deg = self.param_cap.unwrap_or(usize::MAX - 1);
        let mut g = vec![Poly::zero(); self.order + 1];
        for n in 1..=self.order {
            // (1 + f) g' = f'  =>  n g_n = n f_n - sum_{k=1}^{n-1} (n-k) f_k g_{n-k}
            let mut acc = self.coeffs[n].scale(&Rational::from_integer(n.into()));
            for k in 1..n {
                let f = &self.coeffs[k];
                if f.is_zero() || g[n - k].is_zero() {
                    continue;
                }
                let term = f
                    .mul_truncated(&g[n - k], max_deg)
                    .scale(&Rational::from_integer((n - k).into()));
                acc = &acc - &term;
            }
            g[n] = acc.scale(&Rational::new(BigInt::one(), n.into()));
        }
        Ok(Self { coeffs: g, ..self.clone() })
    }

    /// `sum_{m=1}^{d} f(eps_d^m X)`: keeps exponents divisible by `d` and
    /// multiplies them by `d`. No roots of unity are formed.
    pub fn multisection(&self, d: usize) -> Self {
        assert!(d >= 1, "multisection step must be positive");
        let dd = Rational::from_integer(d.into());
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % d == 0 { c.scale(&dd) } else { Poly::zero() })
            .collect();
        Self { coeffs, ..self.clone() }
    }

    /// Substitutes `X -> c X`.
    pub fn rescale(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut coeffs = Vec::with_capacity(self.order + 1);
        for p in &self.coeffs {
            coeffs.push(p.scale(&pw));
            pw *= c;
        }
        Self { coeffs, ..self.clone() }
    }

    /// Divides by `X^k`; the `k` lowest coefficients must vanish. The order
    /// drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.coeffs[..k.min(self.order + 1)].iter().any(|c| !c.is_zero()) || k > self.order {
            return Err(Error::InvalidParameter(format!(
                "series is not divisible by X^{k} within its order"
            )));
        }
        Ok(Self {
            order: self.order - k,
            coeffs: self.coeffs[k..].to_vec(),
            ..self.clone()
        })
    }

    /// Substitutes a rational value for the parameter.
    pub fn eval_param(&self, value: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|p| Poly::constant(p.eval_rational(value))).collect();
        Self { order: self.order, param: None, param_cap: None, coeffs }
    }

    /// Substitutes the parameter, returning plain floating-point coefficients.
    pub fn eval_param_f64(&self, value: f64) -> Vec<f64> {
        self.coeffs.iter().map(|p| p.eval_f64(value)).collect()
    }

    /// Floating-point value of the truncated sum at `x` (parameter-free series).
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, p| acc * x + p.eval_f64(0.0))
    }
}

impl fmt::Display for RatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.param.map(Param::symbol).unwrap_or("p");
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*X^{n}", c.render(var))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(X^{})", self.order + 1)
    }
}

/// Taylor series of `arcsin(x)` to `order`:
/// `sum_j binom(2j, j) / (4^j (2j+1)) x^{2j+1}`.
pub fn arcsin_series(order: usize) -> RatSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut j = 0usize;
    while 2 * j < order {
        let num = binomial(2 * j, j);
        let den = num_traits::pow(BigInt::from(4), j) * BigInt::from(2 * j + 1);
        coeffs[2 * j + 1] = Rational::new(num, den);
        j += 1;
    }
    RatSeries::from_rationals(order, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorial, int, rat};

    fn exp_series(order: usize, sign: i64) -> RatSeries {
        let c: Vec<Rational> = (0..=order)
            .map(|n| Rational::new(BigInt::from(sign).pow(n as u32), factorial(n)))
            .collect();
        RatSeries::from_rationals(order, &c)
    }

    #[test]
    fn difference_of_squares() {
        let a = RatSeries::from_rationals(2, &[int(1), int(1)]);
        let b = RatSeries::from_rationals(2, &[int(1), int(-1)]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p, RatSeries::from_rationals(2, &[int(1), int(0), int(-1)]));
    }

    #[test]
    fn exp_times_exp_inverse_is_one() {
        let p = exp_series(6, 1).mul(&exp_series(6, -1)).unwrap();
        assert_eq!(p, RatSeries::one(6));
    }

    #[test]
    fn product_order_is_minimum() {
        let p = RatSeries::one(3).mul(&RatSeries::one(7)).unwrap();
        assert_eq!(p.order(), 3);
    }

    #[test]
    fn arcsin_squared_leading_terms() {
        // (2 arcsin(x/2))^2 = 2 sum_n x^{2n} / (n^2 binom(2n, n))
        let a = arcsin_series(8).rescale(&rat(1, 2)).scale(&int(2));
        let sq = a.mul(&a).unwrap();
        for n in 1..=4usize {
            let expect = Rational::new(
                BigInt::from(2),
                BigInt::from(n * n) * binomial(2 * n, n),
            );
            assert_eq!(sq.rational_coeff(2 * n), expect, "n = {n}");
            assert!(sq.rational_coeff(2 * n - 1).is_zero());
        }
        assert_eq!(sq.rational_coeff(2), int(1));
        assert_eq!(sq.rational_coeff(4), rat(1, 12));
    }

    #[test]
    fn log1p_of_x() {
        let x = RatSeries::monomial(6, 1, int(1));
        let l = x.log1p().unwrap();
        for n in 1..=6i64 {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(l.rational_coeff(n as usize), rat(sign, n));
        }
        assert_eq!(l.exp().unwrap(), RatSeries::from_rationals(6, &[int(1), int(1)]));
    }

    #[test]
    fn exp_of_log_geometric() {
        // exp(-log(1 - x)) = 1/(1 - x)
        let l = RatSeries::monomial(8, 1, int(-1)).log1p().unwrap().neg();
        let e = l.exp().unwrap();
        for n in 0..=8 {
            assert_eq!(e.rational_coeff(n), int(1));
        }
    }

    #[test]
    fn nonzero_constant_term_rejected() {
        let f = RatSeries::one(3);
        assert_eq!(f.exp(), Err(Error::NonzeroConstantTerm));
        assert_eq!(f.log1p(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn param_mismatch_rejected() {
        let a = RatSeries::new(2, Some(Param::Omega), vec![Poly::var()]);
        let b = RatSeries::new(2, Some(Param::Theta), vec![Poly::var()]);
        assert!(matches!(a.mul(&b), Err(Error::ParamMismatch { .. })));
        // parameter-free series combine with anything
        assert!(a.mul(&RatSeries::one(2)).is_ok());
    }

    #[test]
    fn multisection_examples() {
        let f = RatSeries::from_rationals(4, &[int(0), int(1), int(1)]);
        assert_eq!(f.multisection(2), RatSeries::from_rationals(4, &[int(0), int(0), int(2)]));
        assert_eq!(f.multisection(1), f);
    }
}
