use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::LaurentPoly;
use crate::error::{Error, Result};

use super::element::AlgebraElement;
use super::word::{Letter, Word};

/// `u o v` on single letters, as a coefficient and a letter.
fn circ_letters(u: Letter, v: Letter) -> (LaurentPoly, Letter) {
    match (u, v) {
        (Letter::B, Letter::B) => (LaurentPoly::hbar_pow(1), Letter::B),
        (Letter::B, Letter::G(k)) | (Letter::G(k), Letter::B) => (LaurentPoly::hbar_pow(1), Letter::G(k)),
        (Letter::G(k), Letter::G(l)) => (LaurentPoly::one(), Letter::G(k + l)),
    }
}

fn require_zspan(u: &AlgebraElement) -> Result<()> {
    if u.is_in_zspan() {
        Ok(())
    } else {
        Err(Error::NotInLetterSpan)
    }
}

/// The bilinear contraction on the letter span.
pub fn circ(u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
    require_zspan(u)?;
    require_zspan(v)?;
    let mut out = AlgebraElement::zero();
    for (wu, cu) in u.terms() {
        for (wv, cv) in v.terms() {
            let (c, l) = circ_letters(wu.letters()[0], wv.letters()[0]);
            out.add_term(Word::new(vec![l]), &(&(cu * cv) * &c));
        }
    }
    Ok(out)
}

/// `u^{o n}` with `u^{o 1} = u`.
pub fn circ_power(u: &AlgebraElement, n: usize) -> Result<AlgebraElement> {
    require_zspan(u)?;
    if n == 0 {
        return Err(Error::NonPositivePower(n));
    }
    let mut acc = u.clone();
    for _ in 1..n {
        acc = circ(&acc, u)?;
    }
    Ok(acc)
}

pub fn concat_mul(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            out.add_term(wa.concat(wb), &(ca * cb));
        }
    }
    out
}

/// `u^n` under concatenation; `n = 0` gives the unit.
pub fn concat_power(u: &AlgebraElement, n: usize) -> AlgebraElement {
    (0..n).fold(AlgebraElement::one(), |acc, _| concat_mul(&acc, u))
}

type Memo = RwLock<HashMap<(Word, Word), Arc<AlgebraElement>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Harmonic product of two words, memoized on the unordered pair.
pub fn harmonic_mul_words(a: &Word, b: &Word) -> Arc<AlgebraElement> {
    if a.is_empty() {
        return Arc::new(AlgebraElement::word(b.clone()));
    }
    if b.is_empty() {
        return Arc::new(AlgebraElement::word(a.clone()));
    }
    let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    if let Some(hit) = memo().read().expect("memo poisoned").get(&key) {
        return Arc::clone(hit);
    }
    let value = Arc::new(harmonic_step(&key.0, &key.1, harmonic_mul_words));
    memo().write().expect("memo poisoned").entry(key).or_insert(value).clone()
}

/// Same recursion without the memo or the argument swap.
pub fn harmonic_mul_words_uncached(a: &Word, b: &Word) -> AlgebraElement {
    if a.is_empty() {
        return AlgebraElement::word(b.clone());
    }
    if b.is_empty() {
        return AlgebraElement::word(a.clone());
    }
    harmonic_step(a, b, |x, y| Arc::new(harmonic_mul_words_uncached(x, y)))
}

// (wu) * (w'v) = (w * w'v)u + (wu * w')v + (w * w')(u o v)
fn harmonic_step(a: &Word, b: &Word, rec: impl Fn(&Word, &Word) -> Arc<AlgebraElement>) -> AlgebraElement {
    let (w, u) = a.split_last().expect("nonempty");
    let (w2, v) = b.split_last().expect("nonempty");
    let mut out = rec(&w, b).append_letter(u);
    out.add_scaled(&rec(a, &w2).append_letter(v), &LaurentPoly::one());
    let (c, l) = circ_letters(u, v);
    out.add_scaled(&rec(&w, &w2).append_letter(l), &c);
    out
}

pub fn harmonic_mul(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            out.add_scaled(&harmonic_mul_words(wa, wb), &(ca * cb));
        }
    }
    out
}

/// `w^{* n}` with `w^{* 1} = w`.
pub fn harmonic_power(w: &AlgebraElement, n: usize) -> Result<AlgebraElement> {
    if n == 0 {
        return Err(Error::NonPositivePower(n));
    }
    let mut acc = w.clone();
    for _ in 1..n {
        acc = harmonic_mul(&acc, w);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_e;

    fn h(k: i32) -> LaurentPoly {
        LaurentPoly::hbar_pow(k)
    }

    fn w(ls: &[Letter]) -> AlgebraElement {
        AlgebraElement::word(Word::new(ls.to_vec()))
    }

    #[test]
    fn circ_rules() {
        let g = AlgebraElement::g;
        assert_eq!(circ(&g(1), &g(1)).unwrap(), g(2));
        let b = AlgebraElement::b();
        assert_eq!(circ(&b, &b).unwrap(), b.scale(&h(1)));
        assert_eq!(circ(&b, &g(3)).unwrap(), g(3).scale(&h(1)));
        let e2 = make_e(2).unwrap();
        let e3 = make_e(3).unwrap();
        let expected = g(5) + g(4).scale(&LaurentPoly::monomial(crate::arith::int(2), 1)) + g(3).scale(&h(2));
        assert_eq!(circ(&e2, &e3).unwrap(), expected);
    }

    #[test]
    fn circ_rejects_words() {
        let gg = w(&[Letter::G(1), Letter::G(1)]);
        assert_eq!(circ(&gg, &AlgebraElement::g(1)), Err(Error::NotInLetterSpan));
        assert!(circ_power(&AlgebraElement::g(1), 0).is_err());
    }

    #[test]
    fn circ_power_of_g1() {
        assert_eq!(circ_power(&AlgebraElement::g(1), 3).unwrap(), AlgebraElement::g(3));
    }

    #[test]
    fn unit_law() {
        let x = w(&[Letter::B, Letter::G(2)]) + AlgebraElement::g(1);
        assert_eq!(harmonic_mul(&AlgebraElement::one(), &x), x);
        assert_eq!(harmonic_mul(&x, &AlgebraElement::one()), x);
    }

    #[test]
    fn g1_squared() {
        let g1 = AlgebraElement::g(1);
        let expected = w(&[Letter::G(1), Letter::G(1)]).scale_rat(&crate::arith::int(2)) + AlgebraElement::g(2);
        assert_eq!(harmonic_mul(&g1, &g1), expected);
        assert_eq!(harmonic_power(&g1, 2).unwrap(), expected);
    }

    #[test]
    fn e2_times_e3() {
        let e = |k| make_e(k).unwrap();
        let lhs = harmonic_mul(&e(2), &e(3));
        let rhs = concat_mul(&e(2), &e(3)) + concat_mul(&e(3), &e(2)) + e(5) + e(4).scale(&h(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cached_matches_uncached() {
        let a = Word::new(vec![Letter::B, Letter::G(2), Letter::G(1)]);
        let b = Word::new(vec![Letter::G(3), Letter::B]);
        assert_eq!(*harmonic_mul_words(&a, &b), harmonic_mul_words_uncached(&a, &b));
        assert_eq!(*harmonic_mul_words(&b, &a), harmonic_mul_words_uncached(&b, &a));
    }

    #[test]
    fn concat_of_e2() {
        let e2 = make_e(2).unwrap();
        let sq = concat_mul(&e2, &e2);
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.coeff(&Word::new(vec![Letter::G(1), Letter::G(1)])), h(2));
        assert_eq!(concat_power(&e2, 2), sq);
    }
}
