//! Stirling numbers, nested harmonic sums, the alternating convolutions
//! `C_m(n1, n2)` and Bernoulli numbers.

pub mod identities;

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big, binomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StirlingKind {
    /// Unsigned first kind `[m n]`: permutations of `m` with `n` cycles.
    First,
    /// Second kind `{m n}`: partitions of an `m`-set into `n` blocks.
    Second,
}

impl std::str::FromStr for StirlingKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "first" | "1" => Ok(Self::First),
            "second" | "2" => Ok(Self::Second),
            _ => Err(format!("unknown Stirling kind `{s}` (expected first|second)")),
        }
    }
}

/// Triangular table of Stirling numbers `0 <= n <= m <= max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Builds rows `0..=max` from the boundary `S(m,0) = S(0,m) = delta_{m,0}`
    /// and the recurrences
    /// `[m+1 n] = [m n-1] + m [m n]`, `{m+1 n} = {m n-1} + n {m n}`.
    pub fn build(kind: StirlingKind, max: usize) -> Self {
        let mut t = Self { kind, rows: vec![vec![BigInt::one()]] };
        t.extend_to(max);
        t
    }

    fn extend_to(&mut self, max: usize) {
        while self.rows.len() <= max {
            let m = self.rows.len() - 1;
            let prev = &self.rows[m];
            let mut row = vec![BigInt::zero(); m + 2];
            for (n, slot) in row.iter_mut().enumerate().skip(1) {
                let left = prev.get(n - 1).cloned().unwrap_or_default();
                let here = prev.get(n).cloned().unwrap_or_default();
                let mult = match self.kind {
                    StirlingKind::First => m,
                    StirlingKind::Second => n,
                };
                *slot = left + here * BigInt::from(mult);
            }
            self.rows.push(row);
        }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry `(m, n)`; zero outside the triangle. Panics if `m > max`.
    pub fn get_int(&self, m: usize, n: usize) -> BigInt {
        self.rows[m].get(n).cloned().unwrap_or_default()
    }

    pub fn get(&self, m: usize, n: usize) -> Rational {
        big(&self.get_int(m, n))
    }

    /// A copy with one entry replaced; used to exercise failing checks.
    pub fn with_override(&self, m: usize, n: usize, value: BigInt) -> Self {
        let mut t = self.clone();
        if n >= t.rows[m].len() {
            t.rows[m].resize(n + 1, BigInt::zero());
        }
        t.rows[m][n] = value;
        t
    }
}

fn shared_table(kind: StirlingKind, m: usize) -> BigIntRowsGuard {
    static FIRST: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    static SECOND: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    let cell = match kind {
        StirlingKind::First => &FIRST,
        StirlingKind::Second => &SECOND,
    };
    let lock = cell.get_or_init(|| RwLock::new(StirlingTable::build(kind, 16)));
    {
        let r = lock.read().expect("stirling cache poisoned");
        if r.max() >= m {
            return BigIntRowsGuard(r);
        }
    }
    lock.write().expect("stirling cache poisoned").extend_to(m.max(16));
    BigIntRowsGuard(lock.read().expect("stirling cache poisoned"))
}

struct BigIntRowsGuard(std::sync::RwLockReadGuard<'static, StirlingTable>);

/// Stirling number of the given kind, from a shared memoized table.
pub fn stirling(kind: StirlingKind, m: usize, n: usize) -> Rational {
    big(&stirling_int(kind, m, n))
}

pub fn stirling_int(kind: StirlingKind, m: usize, n: usize) -> BigInt {
    if n > m {
        return BigInt::zero();
    }
    shared_table(kind, m).0.get_int(m, n)
}

/// `[m n]` shorthand.
pub fn s1(m: usize, n: usize) -> Rational {
    stirling(StirlingKind::First, m, n)
}

/// `{m n}` shorthand.
pub fn s2(m: usize, n: usize) -> Rational {
    stirling(StirlingKind::Second, m, n)
}

/// Elementary symmetric values `e_r(1/1^p, ..., 1/(n-1)^p)` for all `r`,
/// i.e. `H_r(n)` for `p = 1` and `H_r^{(2)}(n)` for `p = 2`.
fn nested_row(n: usize, p: u32) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for m in 1..n {
        let w = Rational::new(BigInt::one(), BigInt::from(m).pow(p));
        row.push(Rational::zero());
        for r in (1..row.len()).rev() {
            let add = &row[r - 1] * &w;
            row[r] += add;
        }
    }
    row
}

/// `H_r(n) = sum_{0<m_1<...<m_r<n} 1/(m_1...m_r)`, with `H_0(n) = 1`.
pub fn harmonic(r: usize, n: usize) -> Rational {
    assert!(n >= 1, "harmonic sums need n >= 1");
    nested_row(n, 1).get(r).cloned().unwrap_or_else(Rational::zero)
}

/// `H_r^{(2)}(n) = sum_{0<m_1<...<m_r<n} 1/(m_1...m_r)^2`.
pub fn harmonic2(r: usize, n: usize) -> Rational {
    assert!(n >= 1, "harmonic sums need n >= 1");
    nested_row(n, 2).get(r).cloned().unwrap_or_else(Rational::zero)
}

/// Memo of whole rows `r -> H_r(n)` keyed by `n`, for repeated lookups.
#[derive(Debug, Default, Clone)]
pub struct HarmonicCache {
    h: std::collections::HashMap<usize, Vec<Rational>>,
    h2: std::collections::HashMap<usize, Vec<Rational>>,
}

impl HarmonicCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn h(&mut self, r: usize, n: usize) -> Rational {
        let row = self.h.entry(n).or_insert_with(|| nested_row(n, 1));
        row.get(r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn h2(&mut self, r: usize, n: usize) -> Rational {
        let row = self.h2.entry(n).or_insert_with(|| nested_row(n, 2));
        row.get(r).cloned().unwrap_or_else(Rational::zero)
    }

    /// `C_m(n1, n2) = sum_{a=0}^m (-1)^{m-a} H_a(n1) H_{m-a}(n2)`.
    pub fn c_coeff(&mut self, m: usize, n1: usize, n2: usize) -> Rational {
        if m + 1 >= n1 + n2 {
            return Rational::zero();
        }
        let mut acc = Rational::zero();
        for a in 0..=m {
            let term = self.h(a, n1) * self.h(m - a, n2);
            if (m - a).is_multiple_of(2) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
}

/// `C_m(n1, n2)`; zero whenever `m >= n1 + n2 - 1`.
pub fn c_coeff(m: usize, n1: usize, n2: usize) -> Rational {
    HarmonicCache::new().c_coeff(m, n1, n2)
}

/// Bernoulli numbers with `B_1 = -1/2`; the even ones satisfy
/// `log(sinh(y)/y) = sum_n B_{2n}/(2n)! (2y)^{2n}/(2n)`.
pub fn bernoulli(n: usize) -> Rational {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    let lock = CACHE.get_or_init(|| RwLock::new(vec![Rational::one()]));
    if let Some(b) = lock.read().expect("bernoulli cache poisoned").get(n) {
        return b.clone();
    }
    let mut table = lock.write().expect("bernoulli cache poisoned");
    while table.len() <= n {
        // sum_{k=0}^{m} binom(m+1, k) B_k = 0
        let m = table.len();
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            acc += big(&binomial(m + 1, k)) * b;
        }
        table.push(-acc / big(&BigInt::from(m + 1)));
    }
    table[n].clone()
}
