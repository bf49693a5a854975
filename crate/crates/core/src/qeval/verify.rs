use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::FromPrimitive;
use serde::Serialize;

use crate::algebra::{concat_power, make_e, make_phi};
use crate::arith::{arcsin_series, big, binomial, rat, to_f64, RatSeries, Rational};
use crate::combinatorics::HarmonicCache;
use crate::error::{Error, Result};
use crate::report::{Tolerance, VerificationReport};

use super::{a_r_nl_q, a_r_q, g_k_q, z_q, QContext};

/// The numerically checked q-series identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumericIdentity {
    /// `1 + sum A_r X^{2r} = exp(2 sum (-1)^{k-1}/(2k)! G_{2k} (2 arcsin(X/2))^{2k})`
    Bachmann,
    /// The same with `A_{S,N,eps,r}` and `G_{S,N,eps,2k}`.
    Kms,
    /// `Z_q(h^{-k} phi_k) = G_k(q)`
    PhikG,
    /// `1 + sum (-1)^{((N-1)L-1)r} A_r^{(N,L)} X^r = exp(...)`
    SolvableQ { n: usize, l: usize },
}

impl NumericIdentity {
    pub fn name(&self) -> &'static str {
        match self {
            NumericIdentity::Bachmann => "bachmann",
            NumericIdentity::Kms => "kms",
            NumericIdentity::PhikG => "phik-g",
            NumericIdentity::SolvableQ { .. } => "solvable-q",
        }
    }
}

impl fmt::Display for NumericIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NumericIdentity {
    type Err = Error;

    /// `solvable-q` parses with `N = 2`, `L = 1`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bachmann" | "bachmann-q" => Ok(NumericIdentity::Bachmann),
            "kms" => Ok(NumericIdentity::Kms),
            "phik-g" => Ok(NumericIdentity::PhikG),
            "solvable-q" => Ok(NumericIdentity::SolvableQ { n: 2, l: 1 }),
            other => Err(Error::UnknownIdentity(other.to_string())),
        }
    }
}

pub fn verify_numeric_identity(name: &str, ctx: &QContext, order: usize) -> Result<VerificationReport> {
    verify_numeric(name.parse()?, ctx, order)
}

/// Checks `identity` up to `order` (`r <= order` for the series identities,
/// `k <= order` for `phik-g`), comparing to `ctx.tol`.
pub fn verify_numeric(identity: NumericIdentity, ctx: &QContext, order: usize) -> Result<VerificationReport> {
    if order == 0 {
        return Err(Error::InvalidParameter("order must be >= 1".into()));
    }
    let report = match identity {
        NumericIdentity::Bachmann => {
            let plain = QContext { kms: None, ..ctx.clone() };
            arcsin_identity(&plain, order)?.param("q", ctx.q)
        }
        NumericIdentity::Kms => {
            let kms = ctx
                .kms
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("kms needs N, S and sign".into()))?;
            let s: Vec<String> = kms.residues.iter().map(ToString::to_string).collect();
            arcsin_identity(ctx, order)?
                .param("q", ctx.q)
                .param("N", kms.modulus)
                .param("S", s.join(","))
                .param("sign", kms.sign)
        }
        NumericIdentity::PhikG => phik_g(ctx, order)?,
        NumericIdentity::SolvableQ { n, l } => solvable_q(n, l, ctx, order)?.param("q", ctx.q),
    };
    Ok(report.param("tol", ctx.tol))
}

/// `exp` of a numeric series, carried out exactly on the binary rationals
/// the floats represent.
fn exp_numeric(coeffs: &[f64]) -> Result<Vec<f64>> {
    let order = coeffs.len() - 1;
    let rats = coeffs
        .iter()
        .map(|&x| Rational::from_f64(x).ok_or_else(|| Error::InvalidParameter(format!("non-finite coefficient {x}"))))
        .collect::<Result<Vec<_>>>()?;
    let e = RatSeries::from_rationals(order, &rats).exp()?;
    Ok((0..=order).map(|n| to_f64(&e.rational_coeff(n))).collect())
}

fn arcsin_identity(ctx: &QContext, rmax: usize) -> Result<VerificationReport> {
    let order = 2 * rmax;
    // 2 arcsin(X/2)
    let t = arcsin_series(order).rescale(&rat(1, 2)).scale(&rat(2, 1));
    let mut exponent = vec![0.0; order + 1];
    let mut power = t.mul(&t)?;
    let t2 = power.clone();
    let mut fact = 2.0;
    for k in 1..=rmax {
        let g = g_k_q(2 * k, ctx)?;
        let sign = if k % 2 == 1 { 2.0 } else { -2.0 };
        for (n, slot) in exponent.iter_mut().enumerate() {
            *slot += sign / fact * g * to_f64(&power.rational_coeff(n));
        }
        power = power.mul(&t2)?;
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
    }
    let rhs = exp_numeric(&exponent)?;
    let lhs = (1..=rmax).map(|r| a_r_q(r, ctx)).collect::<Result<Vec<_>>>()?;
    let (name, anchor) = if ctx.kms.is_some() {
        ("kms", "1 + sum A_{S,N,eps,r}(q) X^{2r} = exp(2 sum (-1)^{k-1}/(2k)! G_{S,N,eps,2k}(q) (2 arcsin(X/2))^{2k})")
    } else {
        ("bachmann-q", "1 + sum A_r(q) X^{2r} = exp(2 sum (-1)^{k-1}/(2k)! G_{2k}(q) (2 arcsin(X/2))^{2k})")
    };
    let mut pairs = vec![(0, Complex64::new(1.0, 0.0), Complex64::new(rhs[0], 0.0))];
    for n in 1..=order {
        let l = if n % 2 == 0 { lhs[n / 2 - 1] } else { 0.0 };
        pairs.push((n, Complex64::new(l, 0.0), Complex64::new(rhs[n], 0.0)));
    }
    Ok(VerificationReport::new(name, anchor, rmax).compare_numeric(Tolerance::Absolute(ctx.tol), pairs))
}

fn phik_g(ctx: &QContext, kmax: usize) -> Result<VerificationReport> {
    let mut pairs = Vec::new();
    for k in 1..=kmax {
        let lhs = z_q(&make_phi(k)?.shift_hbar(-(k as i32)), ctx)?;
        let rhs = g_k_q(k, ctx)?;
        pairs.push((k, Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0)));
    }
    let mut report = VerificationReport::new("phik-g", "Z_q(h^{-k} phi_k) = G_k(q)", kmax)
        .param("q", ctx.q)
        .compare_numeric(Tolerance::Mixed(ctx.tol), pairs);
    if let Some(kms) = &ctx.kms {
        let s: Vec<String> = kms.residues.iter().map(ToString::to_string).collect();
        report = report.param("N", kms.modulus).param("S", s.join(",")).param("sign", kms.sign);
    }
    Ok(report)
}

fn solvable_q(n: usize, l: usize, ctx: &QContext, rmax: usize) -> Result<VerificationReport> {
    if n < 2 || l < 1 {
        return Err(Error::InvalidParameter(format!("need N >= 2 and L >= 1, got N={n}, L={l}")));
    }
    let plain = QContext { kms: None, ..ctx.clone() };
    let nl = n * l;
    let g = (0..=nl * rmax)
        .map(|k| if k < 2 { Ok(0.0) } else { g_k_q(k, &plain) })
        .collect::<Result<Vec<_>>>()?;
    let mut cache = HarmonicCache::new();
    let prefactor = rat(n as i64, ((n - 1) * l) as i64);
    let mut exponent = vec![0.0; rmax + 1];
    for (m, slot) in exponent.iter_mut().enumerate().skip(1) {
        let ln = l * m;
        let outer = &prefactor / (Rational::from_integer(((m * m) as i64).into()) * big(&binomial(nl * m, ln)));
        let inner: f64 = (2..=nl * m).map(|k| to_f64(&cache.c_coeff(k - 2, ln, (n - 1) * ln)) * g[k]).sum();
        *slot = to_f64(&outer) * inner;
    }
    let rhs = exp_numeric(&exponent)?;
    let sign: f64 = if ((n - 1) * l + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut pairs = vec![(0, Complex64::new(1.0, 0.0), Complex64::new(rhs[0], 0.0))];
    for r in 1..=rmax {
        let a = a_r_nl_q(n, l, r, &plain)?;
        pairs.push((r, Complex64::new(sign.powi(r as i32) * a, 0.0), Complex64::new(rhs[r], 0.0)));
    }
    Ok(VerificationReport::new(
        "solvable-q",
        "1 + sum (-1)^{((N-1)L-1)r} A_r^{(N,L)}(q) X^r = exp(N/((N-1)L) sum X^n/(n^2 binom(NLn,Ln)) sum_k C_{k-2}(Ln,(N-1)Ln) G_k(q))",
        rmax,
    )
    .param("N", n)
    .param("L", l)
    .compare_numeric(Tolerance::Absolute(ctx.tol), pairs))
}

/// One row of `table q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QRow {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
}

fn row(name: &str, params: &[(&str, String)], lhs: f64, rhs: f64) -> QRow {
    QRow {
        name: name.to_string(),
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        lhs,
        rhs,
        abs_err: (lhs - rhs).abs(),
    }
}

/// `Z_q(h^{-k} phi_k)` against `G_k(q)` for `k <= kmax`, then
/// `Z_q(h^{-2r} e_2^r)` against `A_r(q)` for `2r <= kmax`.
pub fn table_q(ctx: &QContext, kmax: usize) -> Result<Vec<QRow>> {
    let q = ctx.q.to_string();
    let mut rows = Vec::new();
    for k in 1..=kmax {
        let lhs = z_q(&make_phi(k)?.shift_hbar(-(k as i32)), ctx)?;
        rows.push(row("phik-g", &[("q", q.clone()), ("k", k.to_string())], lhs, g_k_q(k, ctx)?));
    }
    let e2 = make_e(2)?;
    for r in 1..=kmax / 2 {
        let lhs = z_q(&concat_power(&e2, r).shift_hbar(-2 * r as i32), ctx)?;
        rows.push(row("a-r", &[("q", q.clone()), ("r", r.to_string())], lhs, a_r_q(r, ctx)?));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qeval::Kms;

    fn ctx(q: f64, tol: f64) -> QContext {
        QContext::new(q).unwrap().with_tol(tol).unwrap()
    }

    #[test]
    fn bachmann_half() {
        let r = verify_numeric_identity("bachmann", &ctx(0.5, 1e-8), 4).unwrap();
        assert!(r.is_verified(), "{:?}", r.first_mismatch);
    }

    #[test]
    fn phik_g_three_values() {
        for q in [0.3, 0.5, 0.7] {
            let r = verify_numeric_identity("phik-g", &ctx(q, 1e-10), 6).unwrap();
            assert!(r.is_verified(), "q={q}: {:?}", r.first_mismatch);
        }
    }

    #[test]
    fn kms_example() {
        let c = ctx(0.3, 1e-7).with_kms(Kms::new(2, [1], -1).unwrap());
        let r = verify_numeric_identity("kms", &c, 3).unwrap();
        assert!(r.is_verified(), "{:?}", r.first_mismatch);
        assert_eq!(r.params["S"], "1");
    }

    #[test]
    fn kms_phi_needs_hbar_power() {
        let c = ctx(0.3, 1e-10).with_kms(Kms::new(3, [1, 2], -1).unwrap());
        let r = verify_numeric(NumericIdentity::PhikG, &c, 5).unwrap();
        assert!(r.is_verified(), "{:?}", r.first_mismatch);
        let g = g_k_q(3, &c).unwrap();
        let without = z_q(&make_phi(3).unwrap(), &c).unwrap();
        assert!((without - g).abs() > 1e-3 * g.abs());
    }

    #[test]
    fn kms_a_matches_z_of_e2_powers() {
        let c = ctx(0.4, 1e-10).with_kms(Kms::new(2, [1], -1).unwrap());
        let e2 = make_e(2).unwrap();
        for r in 1..=3 {
            let z = z_q(&concat_power(&e2, r).shift_hbar(-2 * r as i32), &c).unwrap();
            assert!((z - a_r_q(r, &c).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn solvable_cases() {
        for (n, l) in [(2, 1), (3, 1), (2, 2)] {
            let r = verify_numeric(NumericIdentity::SolvableQ { n, l }, &ctx(0.5, 1e-8), 3).unwrap();
            assert!(r.is_verified(), "N={n} L={l}: {:?}", r.first_mismatch);
        }
    }

    #[test]
    fn a_r_from_e2_powers() {
        let c = ctx(0.5, 1e-9);
        for row in table_q(&c, 6).unwrap() {
            assert!(row.abs_err < 1e-9 * row.rhs.abs().max(1.0), "{row:?}");
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(verify_numeric_identity("nope", &ctx(0.5, 1e-8), 2), Err(Error::UnknownIdentity(_))));
        assert!(verify_numeric_identity("kms", &ctx(0.5, 1e-8), 2).is_err());
    }
}
