use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::arith::{LaurentPoly, Rational};

use super::word::{Letter, Word};

/// Finite `LaurentPoly`-linear combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, LaurentPoly>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, LaurentPoly::one())
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Word::new(vec![l]))
    }

    pub fn term(w: Word, c: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    pub fn g(k: u32) -> Self {
        Self::letter(Letter::g(k))
    }

    pub fn b() -> Self {
        Self::letter(Letter::B)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &LaurentPoly) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), &(a * c));
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        self.scale(&LaurentPoly::constant(c.clone()))
    }

    /// Multiplies by `h^k`.
    pub fn shift_hbar(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.shift(k))).collect() }
    }

    /// Every word has length one.
    pub fn is_in_zspan(&self) -> bool {
        self.terms.keys().all(|w| w.len() == 1)
    }

    /// Every word is empty or does not end in `b`.
    pub fn is_in_h0(&self) -> bool {
        self.terms.keys().all(Word::is_admissible)
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> LaurentPoly {
        self.coeff(&Word::empty())
    }

    /// Largest word length present (0 for scalars and zero).
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Applies `f` to every word, collecting the linear combination it returns.
    pub fn map_words(&self, mut f: impl FnMut(&Word) -> AlgebraElement) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// Appends `l` to every word.
    pub fn append_letter(&self, l: Letter) -> Self {
        Self { terms: self.terms.iter().map(|(w, c)| (w.with_last(l), c.clone())).collect() }
    }
}

impl FromIterator<(Word, LaurentPoly)> for AlgebraElement {
    fn from_iter<I: IntoIterator<Item = (Word, LaurentPoly)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in iter {
            out.add_term(w, &c);
        }
        out
    }
}

impl Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentPoly::one());
        out
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Sub<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-LaurentPoly::one());
        out
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        &self - &rhs
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}
