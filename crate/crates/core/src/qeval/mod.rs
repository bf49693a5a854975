//! Floating-point evaluation of `Z_q` and its residue-restricted, signed
//! variant, with the numerical forms of the q-series identities.

mod series;
mod verify;

use std::collections::BTreeSet;

use crate::algebra::{AlgebraElement, Letter, Word};
use crate::error::{Error, Result};

pub use series::{a_r_nl_q, a_r_q, g_k_q};
pub use verify::{table_q, verify_numeric, verify_numeric_identity, NumericIdentity, QRow};

/// Ratio between the summation tail target and the tolerance.
pub const TAIL_SAFETY: f64 = 1e-3;

const DEFAULT_CAP: usize = 200_000;

/// Residue class data `(N, S, eps)` for the restricted map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kms {
    pub modulus: usize,
    pub residues: BTreeSet<usize>,
    pub sign: i8,
}

impl Kms {
    pub fn new(modulus: usize, residues: impl IntoIterator<Item = usize>, sign: i8) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("N must be >= 1".into()));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidParameter(format!("sign must be +1 or -1, got {sign}")));
        }
        let residues: BTreeSet<usize> = residues.into_iter().map(|s| s % modulus).collect();
        if residues.is_empty() {
            return Err(Error::InvalidParameter("S must be nonempty".into()));
        }
        Ok(Self { modulus, residues, sign })
    }

    pub fn contains(&self, m: usize) -> bool {
        self.residues.contains(&(m % self.modulus))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QContext {
    pub q: f64,
    /// Target for discarded tails (times [`TAIL_SAFETY`]) and the default
    /// comparison tolerance of the numeric verifiers.
    pub tol: f64,
    /// Hard cap on the summation index.
    pub cap: usize,
    pub kms: Option<Kms>,
}

impl QContext {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!("q must lie in (0,1), got {q}")));
        }
        Ok(Self { q, tol: 1e-8, cap: DEFAULT_CAP, kms: None })
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_kms(mut self, kms: Kms) -> Self {
        self.kms = Some(kms);
        self
    }

    pub(crate) fn period(&self) -> usize {
        self.kms.as_ref().map_or(1, |k| k.modulus)
    }

    pub(crate) fn sign(&self) -> f64 {
        self.kms.as_ref().map_or(1.0, |k| f64::from(k.sign))
    }

    pub(crate) fn allowed(&self, m: usize) -> bool {
        self.kms.as_ref().is_none_or(|k| k.contains(m))
    }

    /// Image of `h`.
    pub fn hbar(&self) -> f64 {
        1.0 - self.q
    }
}

/// A truncated sum with the index where it stopped and the estimated tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QValue {
    pub value: f64,
    pub terms: usize,
    pub tail: f64,
}

/// `I(u | m)`: `1 - q` for `b`, `((1-q) eps q^m / (1 - eps q^m))^k` for `g_k`.
fn letter_weight(l: Letter, qm: f64, ctx: &QContext) -> f64 {
    match l {
        Letter::B => ctx.hbar(),
        Letter::G(k) => {
            let eq = ctx.sign() * qm;
            (ctx.hbar() * eq / (1.0 - eq)).powi(k as i32)
        }
    }
}

/// `sum_{0<m_1<...<m_r} prod_a I(u_a | m_a)` for an admissible word, by a
/// running-sum recursion over the largest index.
pub fn z_q_word(w: &Word, ctx: &QContext, tol: f64) -> Result<QValue> {
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let letters = w.letters();
    let r = letters.len();
    if r == 0 {
        return Ok(QValue { value: 1.0, terms: 0, tail: 0.0 });
    }
    let target = tol * TAIL_SAFETY;
    let period = ctx.period();
    // cum[a] = sum over m' <= current m of the depth-(a+1) partial sums
    let mut cum = vec![0.0; r];
    let mut cum_abs = vec![0.0; r];
    let mut window = 0.0;
    let mut prev_window = 0.0;
    let mut last_tail = f64::INFINITY;
    let mut qm = 1.0;
    for m in 1..=ctx.cap {
        qm *= ctx.q;
        if ctx.allowed(m) {
            for a in (0..r).rev() {
                let wgt = letter_weight(letters[a], qm, ctx);
                let (below, below_abs) = if a == 0 { (1.0, 1.0) } else { (cum[a - 1], cum_abs[a - 1]) };
                cum[a] += wgt * below;
                let s = wgt.abs() * below_abs;
                cum_abs[a] += s;
                if a == r - 1 {
                    window += s;
                }
            }
        }
        if m % period == 0 {
            if prev_window > 0.0 && window < prev_window {
                let rho = window / prev_window;
                last_tail = window * rho / (1.0 - rho);
                if window < target && last_tail < target {
                    return Ok(QValue { value: cum[r - 1], terms: m, tail: last_tail });
                }
            }
            if window > 0.0 || prev_window > 0.0 {
                prev_window = window;
            }
            window = 0.0;
        }
    }
    Err(Error::TailNotReached { tolerance: tol, cap: ctx.cap, tail: last_tail })
}

/// `Z_q(w)` with `h^{+-1}` acting as `(1-q)^{+-1}`, or the restricted map when
/// `ctx.kms` is set.
pub fn z_q(w: &AlgebraElement, ctx: &QContext) -> Result<f64> {
    z_q_detailed(w, ctx).map(|v| v.value)
}

pub fn z_q_detailed(w: &AlgebraElement, ctx: &QContext) -> Result<QValue> {
    if let Some((word, _)) = w.terms().find(|(word, _)| !word.is_admissible()) {
        return Err(Error::NotAdmissible(word.to_string()));
    }
    let n = w.len().max(1) as f64;
    let mut out = QValue { value: 0.0, terms: 0, tail: 0.0 };
    for (word, c) in w.terms() {
        let c = c.eval_f64(ctx.hbar());
        let v = z_q_word(word, ctx, ctx.tol / (n * c.abs().max(1.0)))?;
        out.value += c * v.value;
        out.terms = out.terms.max(v.terms);
        out.tail += c.abs() * v.tail;
    }
    Ok(out)
}
