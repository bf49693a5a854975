//! Truncated power series in `X` with word-algebra coefficients.

use std::fmt;

use crate::algebra::{concat_mul, concat_power, harmonic_mul, AlgebraElement};
use crate::arith::{big, factorial, LaurentPoly, RatSeries, Rational};
use crate::error::{Error, Result};

/// Coefficients `0..=order` of a series in `X` over the word algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgSeries {
    order: usize,
    coeffs: Vec<AlgebraElement>,
}

impl AlgSeries {
    /// Pads with zeros or drops terms beyond `order`.
    pub fn new(order: usize, mut coeffs: Vec<AlgebraElement>) -> Self {
        coeffs.resize(order + 1, AlgebraElement::zero());
        Self { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![AlgebraElement::one()])
    }

    /// `u X^n` (zero if `n > order`).
    pub fn monomial(order: usize, n: usize, u: AlgebraElement) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = u;
        }
        s
    }

    /// `sum_n r_n u X^n` for a rational series `r`.
    pub fn from_rat_series(r: &RatSeries, u: &AlgebraElement) -> Result<Self> {
        if r.param().is_some() {
            return Err(Error::ParamMismatch { left: r.param(), right: None });
        }
        let coeffs = (0..=r.order()).map(|n| u.scale_rat(&r.rational_coeff(n))).collect();
        Ok(Self::new(r.order(), coeffs))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &AlgebraElement {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[AlgebraElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(AlgebraElement::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order.min(self.order), self.coeffs.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement) -> Self {
        let order = self.order.min(other.order);
        Self::new(order, (0..=order).map(|n| f(&self.coeffs[n], &other.coeffs[n])).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|u| u.scale(c)).collect())
    }

    fn cauchy(&self, other: &Self, mul: impl Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement) -> Self {
        let order = self.order.min(other.order);
        let mut out = vec![AlgebraElement::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &mul(a, b);
                }
            }
        }
        Self::new(order, out)
    }

    /// Cauchy product with `*` on coefficients.
    pub fn harmonic_mul(&self, other: &Self) -> Self {
        self.cauchy(other, harmonic_mul)
    }

    /// Cauchy product with concatenation on coefficients.
    pub fn concat_mul(&self, other: &Self) -> Self {
        self.cauchy(other, concat_mul)
    }

    /// `1 + sum_{n>=1} f^{*n} / n!`.
    pub fn exp_star(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Self::one(self.order);
        let mut power = Self::one(self.order);
        for n in 1..=self.order {
            power = power.harmonic_mul(self);
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&LaurentPoly::constant(inv_factorial(n))));
        }
        Ok(out)
    }
}

/// `sum_r (-sign)^r u^r X^{r step}` with concatenation powers, i.e.
/// `1/(1 + sign u X^step)`.
pub fn geometric_inverse(u: &AlgebraElement, step: usize, sign: i32, order: usize) -> Result<AlgSeries> {
    if step == 0 {
        return Err(Error::InvalidParameter("geometric step must be >= 1".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParameter("geometric sign must be +1 or -1".into()));
    }
    let mut coeffs = vec![AlgebraElement::zero(); order + 1];
    let mut r = 0;
    while r * step <= order {
        let c = if sign > 0 && r % 2 == 1 { -1 } else { 1 };
        coeffs[r * step] = concat_power(u, r).scale_rat(&Rational::from_integer(c.into()));
        r += 1;
    }
    Ok(AlgSeries::new(order, coeffs))
}

/// `1/n!` as a rational.
pub fn inv_factorial(n: usize) -> Rational {
    big(&factorial(n)).recip()
}

impl fmt::Display for AlgSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match n {
                0 => format!("({c})"),
                1 => format!("({c})*X"),
                _ => format!("({c})*X^{n}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(X^{})", parts.join(" + "), self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_e, parse_element};
    use crate::arith::{int, rat};

    fn el(s: &str) -> AlgebraElement {
        parse_element(s).unwrap()
    }

    #[test]
    fn unit_law() {
        let f = AlgSeries::new(3, vec![el("1"), el("g1"), el("b g2")]);
        assert_eq!(f.harmonic_mul(&AlgSeries::one(3)), f);
    }

    #[test]
    fn product_of_linear_factors() {
        let e2 = make_e(2).unwrap();
        let e3 = make_e(3).unwrap();
        let f = AlgSeries::new(2, vec![el("1"), e2.clone()]);
        let g = AlgSeries::new(2, vec![el("1"), e3.clone()]);
        let p = f.harmonic_mul(&g);
        assert_eq!(p.coeff(1), &(&e2 + &e3));
        assert_eq!(p.coeff(2), &el("e2 e3 + e3 e2 + e5 + h e4"));
    }

    #[test]
    fn geometric_examples() {
        let g = geometric_inverse(&AlgebraElement::zero(), 1, 1, 4).unwrap();
        assert_eq!(g, AlgSeries::one(4));
        let u = el("h^-2 e2");
        let g = geometric_inverse(&u, 2, -1, 6).unwrap();
        assert_eq!(g.coeff(2), &u);
        assert_eq!(g.coeff(4), &el("h^-4 e2 e2"));
        assert!(g.coeff(3).is_zero());
        let g = geometric_inverse(&u, 2, 1, 6).unwrap();
        assert_eq!(g.coeff(2), &-&u);
        assert!(geometric_inverse(&u, 0, 1, 6).is_err());
    }

    #[test]
    fn exp_star_small() {
        assert_eq!(AlgSeries::zero(5).exp_star().unwrap(), AlgSeries::one(5));
        let f = AlgSeries::monomial(2, 1, el("g1"));
        let e = f.exp_star().unwrap();
        assert_eq!(e.coeff(1), &el("g1"));
        assert_eq!(e.coeff(2), &el("g1 g1 + 1/2 g2"));
        assert_eq!(AlgSeries::one(2).exp_star(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn from_rational_series() {
        let r = RatSeries::from_rationals(3, &[int(0), rat(1, 2), int(0), int(3)]);
        let s = AlgSeries::from_rat_series(&r, &el("g2")).unwrap();
        assert_eq!(s.coeff(1), &el("1/2 g2"));
        assert_eq!(s.coeff(3), &el("3 g2"));
        assert_eq!(inv_factorial(4), rat(1, 24));
    }
}
