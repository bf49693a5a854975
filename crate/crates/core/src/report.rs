//! Verification reports shared by the exact and numerical checkers.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Mismatch,
}

/// A real or complex floating-point value as it appears in a report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl Scalar {
    pub fn as_complex(self) -> Complex64 {
        match self {
            Scalar::Real(x) => Complex64::new(x, 0.0),
            Scalar::Complex { re, im } => Complex64::new(re, im),
        }
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Real(x)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Complex { re: z.re, im: z.im }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Real(x) => write!(f, "{x:.17e}"),
            Scalar::Complex { re, im } => write!(f, "{re:.17e}{im:+.17e}i"),
        }
    }
}

/// How a numeric discrepancy is judged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tolerance {
    /// `|lhs - rhs| <= tol`
    Absolute(f64),
    /// `|lhs - rhs| <= tol * |rhs|`
    Relative(f64),
    /// `|lhs - rhs| <= tol * max(1, |rhs|)`
    Mixed(f64),
}

impl Tolerance {
    pub fn accepts(&self, lhs: Complex64, rhs: Complex64) -> bool {
        let err = (lhs - rhs).norm();
        if !err.is_finite() {
            return false;
        }
        match *self {
            Tolerance::Absolute(t) => err <= t,
            Tolerance::Relative(t) => err <= t * rhs.norm(),
            Tolerance::Mixed(t) => err <= t * rhs.norm().max(1.0),
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Tolerance::Absolute(t) | Tolerance::Relative(t) | Tolerance::Mixed(t) => t,
        }
    }
}

/// First coefficient (or index) at which the two sides disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    /// The identity in formula form.
    pub anchor: String,
    pub params: BTreeMap<String, String>,
    pub order: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_err: Option<f64>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, anchor: impl Into<String>, order: usize) -> Self {
        Self {
            identity: identity.into(),
            anchor: anchor.into(),
            params: BTreeMap::new(),
            order,
            status: Status::Verified,
            first_mismatch: None,
            value: None,
            reference: None,
            abs_err: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn mismatch_degree(&self) -> Option<usize> {
        self.first_mismatch.as_ref().map(|m| m.degree)
    }

    /// Records the first pair that differs, scanning in the given order.
    pub fn compare_exact<T, I>(self, pairs: I) -> Self
    where
        T: PartialEq + fmt::Display,
        I: IntoIterator<Item = (usize, T, T)>,
    {
        self.compare_exact_located(pairs.into_iter().map(|(d, a, b)| (d, None, a, b)))
    }

    /// Like [`compare_exact`](Self::compare_exact) with a free-form location
    /// (e.g. an index pair) attached to each comparison.
    pub fn compare_exact_located<T, I>(mut self, pairs: I) -> Self
    where
        T: PartialEq + fmt::Display,
        I: IntoIterator<Item = (usize, Option<String>, T, T)>,
    {
        for (degree, location, lhs, rhs) in pairs {
            if lhs != rhs {
                self.status = Status::Mismatch;
                self.first_mismatch = Some(Mismatch {
                    degree,
                    location,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
                break;
            }
        }
        self
    }

    /// Numeric comparison; `abs_err` holds the largest discrepancy and
    /// `value`/`reference` the pair that produced it.
    pub fn compare_numeric<I>(mut self, tol: Tolerance, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, Complex64, Complex64)>,
    {
        let mut worst: Option<(f64, Complex64, Complex64)> = None;
        for (degree, lhs, rhs) in pairs {
            let err = (lhs - rhs).norm();
            let err_key = if err.is_finite() { err } else { f64::INFINITY };
            if worst.as_ref().is_none_or(|(w, _, _)| err_key > *w) {
                worst = Some((err_key, lhs, rhs));
            }
            if !tol.accepts(lhs, rhs) && self.first_mismatch.is_none() {
                self.status = Status::Mismatch;
                self.first_mismatch = Some(Mismatch {
                    degree,
                    location: None,
                    lhs: Scalar::from(lhs).to_string(),
                    rhs: Scalar::from(rhs).to_string(),
                });
            }
        }
        if let Some((err, lhs, rhs)) = worst {
            let pick = |z: Complex64| {
                if z.im == 0.0 {
                    Scalar::Real(z.re)
                } else {
                    Scalar::from(z)
                }
            };
            self.abs_err = Some(err);
            self.value = Some(pick(lhs));
            self.reference = Some(pick(rhs));
        }
        self.params.insert("tol".into(), format!("{:e}", tol.value()));
        self
    }

    /// Combines sub-reports: verified iff all are, mismatch taken from the first
    /// failing one.
    pub fn merge(mut self, parts: &[VerificationReport]) -> Self {
        for p in parts {
            if !p.is_verified() && self.is_verified() {
                self.status = Status::Mismatch;
                self.first_mismatch = p.first_mismatch.clone().map(|mut m| {
                    let loc = format!("{}{}", p.identity, m.location.map(|l| format!(" {l}")).unwrap_or_default());
                    m.location = Some(loc);
                    m
                });
            }
            if let Some(e) = p.abs_err {
                self.abs_err = Some(self.abs_err.map_or(e, |x| x.max(e)));
            }
        }
        self
    }
}
