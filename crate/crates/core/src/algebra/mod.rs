//! The word algebra over `Q[h, 1/h]` on letters `b` and `g_k`, with the
//! contraction `o`, concatenation, and the harmonic product `*`.

mod element;
mod product;
mod text;
mod word;

pub use element::AlgebraElement;
pub use product::{
    circ, circ_power, concat_mul, concat_power, harmonic_mul, harmonic_mul_words, harmonic_mul_words_uncached,
    harmonic_power,
};
pub use text::parse_element;
pub use word::{Letter, Word};

use crate::arith::{big, sign_pow, LaurentPoly, Rational};
use crate::combinatorics::s2;
use crate::error::{Error, Result};
use crate::identity::PolynomialSpec;

/// `e_k = g_k + h g_{k-1}`, with `e_1 = b + g_1`.
pub fn make_e(k: usize) -> Result<AlgebraElement> {
    match k {
        0 => Err(Error::InvalidParameter("e_k needs k >= 1".into())),
        1 => Ok(AlgebraElement::b() + AlgebraElement::g(1)),
        _ => Ok(AlgebraElement::g(k as u32) + AlgebraElement::g(k as u32 - 1).shift_hbar(1)),
    }
}

/// `phi_k = sum_j (j-1)! {k j} h^{k-j} g_j`.
pub fn make_phi(k: usize) -> Result<AlgebraElement> {
    if k == 0 {
        return Err(Error::InvalidParameter("phi_k needs k >= 1".into()));
    }
    let mut out = AlgebraElement::zero();
    for j in 1..=k {
        let c = big(&crate::arith::factorial(j - 1)) * s2(k, j);
        let term = LaurentPoly::monomial(c, (k - j) as i32);
        out.add_term(Word::new(vec![Letter::g(j as u32)]), &term);
    }
    Ok(out)
}

/// `psi(z^n) = (-h)^{-n} g_n`, extended linearly.
pub fn psi(p: &PolynomialSpec) -> AlgebraElement {
    psi_coeffs(p.coeffs())
}

fn psi_coeffs(coeffs: &[Rational]) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (n, c) in coeffs.iter().enumerate().skip(1) {
        let term = LaurentPoly::monomial(c * sign_pow(n as i64), -(n as i32));
        out.add_term(Word::new(vec![Letter::g(n as u32)]), &term);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn h(k: i32) -> LaurentPoly {
        LaurentPoly::hbar_pow(k)
    }

    #[test]
    fn phi_small() {
        assert_eq!(make_phi(1).unwrap(), AlgebraElement::g(1));
        assert_eq!(make_phi(2).unwrap(), make_e(2).unwrap());
        let g = AlgebraElement::g;
        let phi3 = g(3).scale_rat(&int(2)) + g(2).scale(&LaurentPoly::monomial(int(3), 1)) + g(1).scale(&h(2));
        assert_eq!(make_phi(3).unwrap(), phi3);
        assert!(make_phi(0).is_err());
        assert!(make_e(0).is_err());
    }

    #[test]
    fn psi_of_cyclotomic_shape() {
        for n in 2..6 {
            let p = PolynomialSpec::z_pow_minus(n);
            let expected = make_e(n).unwrap().shift_hbar(-(n as i32)).scale_rat(&sign_pow(n as i64));
            assert_eq!(psi(&p), expected, "N = {n}");
        }
        let p = PolynomialSpec::parse("z^2 - z").unwrap();
        assert_eq!(psi(&p), make_e(2).unwrap().scale(&h(-2)));
    }
}
