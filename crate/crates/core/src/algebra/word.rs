use std::cmp::Ordering;
use std::fmt;

/// A generator of the word algebra: `b` stands for `e_1 - g_1`, `G(k)` for `g_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    B,
    G(u32),
}

impl Letter {
    /// `g_k`; panics for `k = 0`.
    pub fn g(k: u32) -> Self {
        assert!(k >= 1, "g_k needs k >= 1");
        Letter::G(k)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::B => write!(f, "b"),
            Letter::G(k) => write!(f, "g{k}"),
        }
    }
}

/// Monomial `u_1 ... u_r`; the empty word is the unit.
///
/// Ordered length-first, then lexicographically by letter (`b < g1 < g2 < ...`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Word with the last letter removed, and that letter.
    pub fn split_last(&self) -> Option<(Word, Letter)> {
        let (last, rest) = self.0.split_last()?;
        Some((Word(rest.to_vec()), *last))
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn with_last(&self, l: Letter) -> Word {
        let mut w = self.clone();
        w.0.push(l);
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Admissible: empty, or not ending in `b`.
    pub fn is_admissible(&self) -> bool {
        self.last() != Some(Letter::B)
    }

    /// Sum of letter weights with `b` counted as 1.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|l| match l { Letter::B => 1, Letter::G(k) => *k }).sum()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_lexicographic_order() {
        let a = Word::new(vec![Letter::G(5)]);
        let b = Word::new(vec![Letter::B, Letter::G(1)]);
        let c = Word::new(vec![Letter::G(1), Letter::B]);
        assert!(Word::empty() < a);
        assert!(a < b);
        assert!(b < c);
        assert!(Letter::B < Letter::G(1));
    }

    #[test]
    fn admissibility() {
        assert!(Word::empty().is_admissible());
        assert!(Word::new(vec![Letter::B, Letter::G(2)]).is_admissible());
        assert!(!Word::new(vec![Letter::G(2), Letter::B]).is_admissible());
    }
}
