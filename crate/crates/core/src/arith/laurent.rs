use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{fmt_rat, is_negative, to_f64, Rational};

/// Finite rational combination of integer powers of `h`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// Laurent polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * h^k`.
    pub fn monomial(c: Rational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// `h^k`.
    pub fn hbar_pow(k: i32) -> Self {
        Self::monomial(Rational::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `h^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Exact substitution of a nonzero rational for `h`.
    pub fn eval_rational(&self, h: &Rational) -> Rational {
        assert!(!h.is_zero(), "cannot substitute h = 0 into a Laurent polynomial");
        self.terms
            .iter()
            .map(|(k, c)| c * pow_rational(h, *k))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn eval_f64(&self, h: f64) -> f64 {
        self.terms.iter().map(|(k, c)| to_f64(c) * h.powi(*k)).sum()
    }

    pub fn eval_complex(&self, h: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| h.powi(*k) * to_f64(c))
            .sum()
    }
}

fn pow_rational(base: &Rational, k: i32) -> Rational {
    let p = num_traits::pow(base.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders as a sum such as `2*h^-1 + 3 - h`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let h = match k {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{k}"),
            };
            if h.is_empty() {
                write!(f, "{}", fmt_rat(&abs))?;
            } else if abs.is_one() {
                write!(f, "{h}")?;
            } else {
                write!(f, "{}*{h}", fmt_rat(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn cancellation_removes_terms() {
        let a = LaurentPoly::monomial(int(2), -1) + LaurentPoly::one();
        let b = LaurentPoly::monomial(int(-2), -1);
        let s = &a + &b;
        assert_eq!(s, LaurentPoly::one());
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn product_and_eval() {
        // (1 + h)(1 - h) = 1 - h^2
        let a = LaurentPoly::one() + LaurentPoly::hbar_pow(1);
        let b = LaurentPoly::one() - LaurentPoly::hbar_pow(1);
        let p = &a * &b;
        assert_eq!(p, LaurentPoly::one() - LaurentPoly::hbar_pow(2));
        assert_eq!(p.eval_rational(&rat(1, 2)), rat(3, 4));
        let inv = LaurentPoly::hbar_pow(-2);
        assert_eq!(inv.eval_rational(&rat(1, 3)), int(9));
        assert!((inv.eval_f64(0.5) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn display_format() {
        let p = LaurentPoly::monomial(int(2), -1) + LaurentPoly::monomial(int(-1), 1)
            + LaurentPoly::constant(rat(3, 2));
        assert_eq!(p.to_string(), "2*h^-1 + 3/2 - h");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
