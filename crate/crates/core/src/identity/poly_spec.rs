use std::fmt;

use num_traits::Zero;

use crate::arith::{int, Poly, Rational};
use crate::error::{Error, Result};

/// `P(z) = sum_{j=1}^{N} c_j z^j` with `P(0) = P(1) = 0` and `N >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSpec {
    coeffs: Vec<Rational>,
}

impl PolynomialSpec {
    /// `coeffs[j]` is the coefficient of `z^j`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        let p = Poly::new(coeffs);
        if !p.constant_term().is_zero() {
            return Err(Error::InvalidPolynomial("P(0)=0 violated".into()));
        }
        if p.is_zero() {
            return Err(Error::InvalidPolynomial("P must be nonzero".into()));
        }
        let at_one: Rational = p.coeffs().iter().sum();
        if !at_one.is_zero() {
            return Err(Error::InvalidPolynomial(format!("P(1)=0 violated (P(1) = {at_one})")));
        }
        Ok(Self { coeffs: p.coeffs().to_vec() })
    }

    /// `z^{n-1}(z - 1)`.
    pub fn z_pow_minus(n: usize) -> Self {
        assert!(n >= 2);
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = int(1);
        c[n - 1] = int(-1);
        Self { coeffs: c }
    }

    /// Parses signed terms `c*z^k`, `c*z`, `z^k`, `c` (rational `c` allowed).
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if coeffs.is_empty() => (false, rest),
                _ => return Err(Error::Parse(format!("expected '+' or '-' before '{rest}'"))),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (c, k) = parse_term(&body[..end])?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += if neg { -c } else { c };
            rest = &body[end..];
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }
}

fn parse_term(t: &str) -> Result<(Rational, usize)> {
    let bad = || Error::Parse(format!("bad term '{t}'"));
    let (coef, var) = match t.find('z') {
        None => (t, None),
        Some(i) => {
            let c = t[..i].strip_suffix('*').unwrap_or(&t[..i]);
            (c, Some(&t[i + 1..]))
        }
    };
    let c = if coef.is_empty() {
        if var.is_none() {
            return Err(bad());
        }
        int(1)
    } else {
        parse_rational(coef).ok_or_else(bad)?
    };
    let k = match var {
        None => 0,
        Some("") => 1,
        Some(e) => e.strip_prefix('^').and_then(|d| d.parse().ok()).ok_or_else(bad)?,
    };
    Ok((c, k))
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: Rational = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(n.parse::<Rational>().ok()? / d)
        }
        None => s.parse().ok(),
    }
}

impl fmt::Display for PolynomialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly().render("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn parse_accepts_valid() {
        let p = PolynomialSpec::parse("z^2 - z").unwrap();
        assert_eq!(p, PolynomialSpec::z_pow_minus(2));
        let p = PolynomialSpec::parse("z^3 - 2*z^2 + z").unwrap();
        assert_eq!(p.coeffs(), &[int(0), int(1), int(-2), int(1)]);
        let p = PolynomialSpec::parse("1/2 z^3 - 1/2z").unwrap();
        assert_eq!(p.coeffs(), &[int(0), rat(-1, 2), int(0), rat(1, 2)]);
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn parse_rejects_outside_class() {
        let e = PolynomialSpec::parse("z^2 + 1").unwrap_err();
        assert!(e.to_string().contains("P(0)=0 violated"), "{e}");
        let e = PolynomialSpec::parse("z^2 + z").unwrap_err();
        assert!(e.to_string().contains("P(1)=0 violated"), "{e}");
        assert!(PolynomialSpec::parse("z - z").is_err());
        assert!(PolynomialSpec::parse("z^").is_err());
        assert!(PolynomialSpec::parse("").is_err());
        assert!(PolynomialSpec::parse("2*y").is_err());
    }
}
