use num_traits::Zero;

use crate::arith::{big, factorial, int, sign_pow, Poly, RatSeries, Rational};
use crate::combinatorics::s1;
use crate::error::{Error, Result};

use super::PolynomialSpec;

/// Power sums `p_s(X) = sum_{m=1}^{NL} alpha(eps_{NL}^m X)^s` for `s = 1..=s_max`,
/// truncated at `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaPowerSums {
    pub l: usize,
    pub n: usize,
    pub order: usize,
    /// `p[s - 1]` holds `p_s`.
    p: Vec<RatSeries>,
}

impl AlphaPowerSums {
    pub fn s_max(&self) -> usize {
        self.p.len()
    }

    /// `p_s` for `1 <= s <= s_max`.
    pub fn p(&self, s: usize) -> &RatSeries {
        &self.p[s - 1]
    }

    /// Elementary symmetric data of `1 - X^{NL} P(z)^L = sum_i (-1)^i e_i z^i`,
    /// as rational series in `X`.
    pub fn elementary(p: &PolynomialSpec, l: usize, order: usize) -> Vec<RatSeries> {
        let nl = p.degree() * l;
        let pl = pow_poly(&p.as_poly(), l, usize::MAX - 1);
        (0..=pl.degree().unwrap_or(0))
            .map(|i| {
                let mut c = vec![Rational::zero(); order + 1];
                if i == 0 {
                    c[0] = int(1);
                } else if nl <= order {
                    c[nl] = -pl.coeff(i) * sign_pow(i as i64);
                }
                RatSeries::from_rationals(order, &c)
            })
            .collect()
    }

    /// Newton's identities `p_s = sum_{i=1}^{s-1} (-1)^{i-1} e_i p_{s-i} + (-1)^{s-1} s e_s`
    /// checked for every stored `s`; returns the first failing `s`.
    pub fn newton_failure(&self, p: &PolynomialSpec) -> Option<usize> {
        let e = Self::elementary(p, self.l, self.order);
        let e_at = |i: usize| e.get(i).cloned().unwrap_or_else(|| RatSeries::zero(self.order));
        for s in 1..=self.s_max() {
            let mut rhs = e_at(s).scale(&(sign_pow(s as i64 - 1) * int(s as i64)));
            for i in 1..s {
                let t = e_at(i).mul(self.p(s - i)).expect("rational").scale(&sign_pow(i as i64 - 1));
                rhs = rhs.add(&t).expect("rational");
            }
            if &rhs != self.p(s) {
                return Some(s);
            }
        }
        None
    }
}

fn pow_poly(p: &Poly, k: usize, max_deg: usize) -> Poly {
    (0..k).fold(Poly::one(), |acc, _| acc.mul_truncated(p, max_deg))
}

/// Expands `L X^{NL} P'(z) P(z)^{L-1} / (1 - X^{NL} P(z)^L)` as a series in `X`
/// with polynomial coefficients in `z` of degree `< s_max`, and reads off the
/// coefficient of `z^{s-1}` as `p_s`.
pub fn alpha_power_sums(p: &PolynomialSpec, l: usize, s_max: usize, order: usize) -> Result<AlphaPowerSums> {
    if l == 0 {
        return Err(Error::InvalidParameter("L must be >= 1".into()));
    }
    if order == 0 {
        return Err(Error::InvalidParameter("order must be >= 1".into()));
    }
    let n = p.degree();
    let nl = n * l;
    let zmax = s_max.saturating_sub(1);
    let poly = p.as_poly();
    let pl = pow_poly(&poly, l, zmax);
    let mut numerator = poly.derivative().mul_truncated(&pow_poly(&poly, l - 1, zmax), zmax).scale(&int(l as i64));
    // X-degree t*NL carries L P' P^{L-1} (P^L)^{t-1}
    let mut by_x: Vec<(usize, Poly)> = Vec::new();
    let mut t = 1;
    while t * nl <= order {
        by_x.push((t * nl, numerator.clone()));
        numerator = numerator.mul_truncated(&pl, zmax);
        t += 1;
    }
    let sums = (1..=s_max)
        .map(|s| {
            let mut c = vec![Rational::zero(); order + 1];
            for (deg, z_poly) in &by_x {
                c[*deg] = z_poly.coeff(s - 1);
            }
            RatSeries::from_rationals(order, &c)
        })
        .collect();
    Ok(AlphaPowerSums { l, n, order, p: sums })
}

/// `sum_m Log(1 - alpha(eps^m X))^k = (-1)^k sum_{s>=k} (k!/s!) [s k] p_s`.
pub fn log_sum_powers(a: &AlphaPowerSums, k: usize, order: usize) -> Result<RatSeries> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let order = order.min(a.order);
    if a.s_max() < order {
        return Err(Error::InsufficientPowerSums { have: a.s_max(), need: order });
    }
    let mut out = RatSeries::zero(order);
    let kf = big(&factorial(k));
    for s in k..=order {
        let c = sign_pow(k as i64) * &kf * s1(s, k) / big(&factorial(s));
        out = out.add(&a.p(s).truncate(order).scale(&c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{arcsin_series, rat};

    fn zz() -> PolynomialSpec {
        PolynomialSpec::z_pow_minus(2)
    }

    fn series(order: usize, pairs: &[(usize, Rational)]) -> RatSeries {
        let mut c = vec![Rational::zero(); order + 1];
        for (n, v) in pairs {
            c[*n] = v.clone();
        }
        RatSeries::from_rationals(order, &c)
    }

    #[test]
    fn quadratic_power_sums() {
        let a = alpha_power_sums(&zz(), 1, 4, 6).unwrap();
        assert_eq!(a.p(1), &series(6, &[(2, int(-1))]));
        assert_eq!(a.p(2).truncate(4), series(4, &[(2, int(2)), (4, int(1))]));
        assert_eq!(a.p(3).truncate(6), series(6, &[(4, int(-3)), (6, int(-1))]));
    }

    // Independent oracle: p_s = sum_t X^{tNL} (s/t) [z^s] P^{tL}.
    #[test]
    fn matches_closed_coefficients_and_newton() {
        for (spec, l, order) in [("z^2 - z", 1, 10), ("z^3 - z^2", 1, 9), ("z^3 - 2*z^2 + z", 1, 9), ("z^2 - z", 2, 8)] {
            let p = PolynomialSpec::parse(spec).unwrap();
            let a = alpha_power_sums(&p, l, order, order).unwrap();
            let nl = p.degree() * l;
            for s in 1..=order {
                let mut c = vec![Rational::zero(); order + 1];
                let mut t = 1;
                while t * nl <= order {
                    let ptl = pow_poly(&p.as_poly(), t * l, usize::MAX - 1);
                    c[t * nl] = ptl.coeff(s) * rat(s as i64, t as i64);
                    t += 1;
                }
                assert_eq!(a.p(s), &RatSeries::from_rationals(order, &c), "{spec} L={l} s={s}");
                assert!(a.p(s).valuation().is_none_or(|v| v >= s));
            }
            assert_eq!(a.newton_failure(&p), None, "{spec}");
        }
    }

    #[test]
    fn first_log_sum_vanishes() {
        for spec in ["z^2 - z", "z^4 - z^3", "z^3 - 2*z^2 + z", "3*z^3 - z^2 - 2*z"] {
            let p = PolynomialSpec::parse(spec).unwrap();
            let a = alpha_power_sums(&p, 1, 12, 12).unwrap();
            assert!(log_sum_powers(&a, 1, 12).unwrap().is_zero(), "{spec}");
        }
    }

    // 2 (2 arcsinh(X/2))^2, obtained from (2 arcsin(x/2))^2 by x^2 -> -X^2 and an
    // overall sign.
    #[test]
    fn second_log_sum_is_arcsinh_squared() {
        let order = 12;
        let a = alpha_power_sums(&zz(), 1, order, order).unwrap();
        let got = log_sum_powers(&a, 2, order).unwrap();
        let asin = arcsin_series(order).rescale(&rat(1, 2)).scale(&int(2));
        let sq = asin.mul(&asin).unwrap();
        let expected: Vec<Rational> = (0..=order)
            .map(|n| if n % 2 == 0 { -sq.rational_coeff(n) * sign_pow(n as i64 / 2) * int(2) } else { Rational::zero() })
            .collect();
        assert_eq!(got, RatSeries::from_rationals(order, &expected));
        assert_eq!(got.rational_coeff(2), int(2));
        assert_eq!(got.rational_coeff(4), rat(-1, 6));
    }

    #[test]
    fn beyond_order_vanishes_and_bounds() {
        let a = alpha_power_sums(&zz(), 1, 6, 6).unwrap();
        assert!(log_sum_powers(&a, 7, 6).unwrap().is_zero());
        let short = alpha_power_sums(&zz(), 1, 3, 6).unwrap();
        assert_eq!(log_sum_powers(&short, 2, 6), Err(Error::InsufficientPowerSums { have: 3, need: 6 }));
        for k in 2..=6 {
            let v = log_sum_powers(&a, k, 6).unwrap().valuation();
            assert!(v.is_none_or(|v| v >= k.max(2)), "k={k}");
        }
    }
}
