use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{fmt_rat, LaurentPoly, Rational};
use crate::error::{Error, Result};

use super::element::AlgebraElement;
use super::product::concat_mul;
use super::{make_e, Letter};

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (word, coeff) in self.terms() {
            for (k, c) in coeff.terms() {
                let mut factors = Vec::new();
                if !c.abs().is_one() {
                    factors.push(fmt_rat(&c.abs()));
                }
                match k {
                    0 => {}
                    1 => factors.push("h".into()),
                    _ => factors.push(format!("h^{k}")),
                }
                factors.extend(word.letters().iter().map(ToString::to_string));
                if factors.is_empty() {
                    factors.push("1".into());
                }
                let sign = match (first, c.is_negative()) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                };
                write!(f, "{sign}{}", factors.join("*"))?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Parses the text form: sums of products of rationals, `h`, `h^k`, `b`,
/// `gK`, `eK` and parenthesised subexpressions. Products are concatenation.
pub fn parse_element(s: &str) -> Result<AlgebraElement> {
    let mut p = Parser { it: s.chars().peekable() };
    let e = p.expr()?;
    p.skip_ws();
    match p.it.peek() {
        None => Ok(e),
        Some(c) => Err(Error::Parse(format!("unexpected '{c}'"))),
    }
}

struct Parser<'a> {
    it: Peekable<Chars<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.it.peek().is_some_and(|c| c.is_whitespace()) {
            self.it.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.it.peek().copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        let mut s = String::new();
        while let Some(c) = self.it.peek().copied().filter(char::is_ascii_digit) {
            s.push(c);
            self.it.next();
        }
        s.parse().map_err(|_| Error::Parse("expected digits".into()))
    }

    fn index(&mut self, what: char) -> Result<u32> {
        let n = self.digits()?;
        u32::try_from(n)
            .ok()
            .filter(|k| *k >= 1)
            .ok_or_else(|| Error::Parse(format!("bad index after '{what}'")))
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::zero();
        let mut sign = match self.peek() {
            Some('-') => {
                self.it.next();
                -1
            }
            Some('+') => {
                self.it.next();
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            sign = match self.peek() {
                Some('+') => 1,
                Some('-') => -1,
                _ => return Ok(acc),
            };
            self.it.next();
        }
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.it.next();
                }
                Some(c) if c.is_ascii_digit() || "hbge(".contains(c) => {}
                _ => return Ok(acc),
            }
            acc = concat_mul(&acc, &self.atom()?);
        }
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        let c = self.peek().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        match c {
            '0'..='9' => {
                let n = self.digits()?;
                let mut r = Rational::from_integer(n);
                if self.peek() == Some('/') {
                    self.it.next();
                    self.skip_ws();
                    let d = self.digits()?;
                    if d == BigInt::from(0) {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    r /= Rational::from_integer(d);
                }
                Ok(AlgebraElement::scalar(LaurentPoly::constant(r)))
            }
            'h' => {
                self.it.next();
                let mut k = 1i32;
                if self.peek() == Some('^') {
                    self.it.next();
                    self.skip_ws();
                    let neg = self.it.peek() == Some(&'-');
                    if neg {
                        self.it.next();
                    }
                    let n = i32::try_from(self.digits()?).map_err(|_| Error::Parse("exponent too large".into()))?;
                    k = if neg { -n } else { n };
                }
                Ok(AlgebraElement::scalar(LaurentPoly::hbar_pow(k)))
            }
            'b' => {
                self.it.next();
                Ok(AlgebraElement::b())
            }
            'g' => {
                self.it.next();
                Ok(AlgebraElement::letter(Letter::G(self.index('g')?)))
            }
            'e' => {
                self.it.next();
                make_e(self.index('e')? as usize)
            }
            '(' => {
                self.it.next();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                self.it.next();
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected '{other}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{harmonic_mul, make_phi};

    #[test]
    fn render_examples() {
        let g1 = AlgebraElement::g(1);
        assert_eq!(harmonic_mul(&g1, &g1).to_string(), "g2 + 2*g1*g1");
        assert_eq!(make_phi(3).unwrap().to_string(), "h^2*g1 + 3*h*g2 + 2*g3");
        assert_eq!(AlgebraElement::zero().to_string(), "0");
        assert_eq!(AlgebraElement::one().to_string(), "1");
        assert_eq!((-AlgebraElement::b()).scale_rat(&crate::arith::rat(1, 2)).to_string(), "-1/2*b");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["g2 + 2*g1*g1", "h^-2*g2 + h^-1*g1", "-1/2*b*g3", "1 - h*b"] {
            let e = parse_element(s).unwrap();
            assert_eq!(parse_element(&e.to_string()).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn parse_expands_e() {
        let e = parse_element("h^-2 e2").unwrap();
        assert_eq!(e, parse_element("h^-2*g2 + h^-1*g1").unwrap());
        let e1 = parse_element("e1").unwrap();
        assert_eq!(e1, parse_element("b + g1").unwrap());
        assert_eq!(parse_element("(g1 + b)*g2").unwrap(), parse_element("g1 g2 + b g2").unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_element("g0").is_err());
        assert!(parse_element("g1 +").is_err());
        assert!(parse_element("x").is_err());
        assert!(parse_element("(g1").is_err());
        assert!(parse_element("1/0").is_err());
    }
}
