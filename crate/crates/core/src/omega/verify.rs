use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{circ_power, make_e, make_phi};
use crate::arith::{factorial, to_f64, big};
use crate::error::{Error, Result};
use crate::report::{Scalar, Tolerance, VerificationReport};

use super::{
    sine_product_series, g_k_omega_closed, g_s_omega_integral, omega_generating_series, z_omega, z_omega_depth1,
    OmegaContext,
};

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `(G_s(w), G_s(w+1) + (w+1)^{-s} G_s(w/(w+1)))`, all three by quadrature.
fn three_term_sides(s: f64, ctx: &OmegaContext) -> Result<(Complex64, Complex64)> {
    let w = ctx.omega;
    let lhs = g_s_omega_integral(s, ctx)?;
    let a = g_s_omega_integral(s, &ctx.with_omega(w + 1.0)?)?;
    let b = g_s_omega_integral(s, &ctx.with_omega(w / (w + 1.0))?)?;
    Ok((lhs, a + (w + 1.0).powf(-s) * b))
}

/// `|G_s(w) - G_s(w+1) - (w+1)^{-s} G_s(w/(w+1))|`.
pub fn three_term_residual(s: f64, ctx: &OmegaContext) -> Result<f64> {
    let (l, r) = three_term_sides(s, ctx)?;
    Ok((l - r).norm())
}

pub fn verify_three_term(s: f64, ctx: &OmegaContext) -> Result<VerificationReport> {
    let (l, r) = three_term_sides(s, ctx)?;
    Ok(VerificationReport::new("three-term", "G_s(w) = G_s(w+1) + (w+1)^{-s} G_s(w/(w+1))", 0)
        .param("s", s)
        .param("omega", ctx.omega)
        .param("tol", ctx.tol)
        .compare_numeric(Tolerance::Absolute(ctx.tol), [(0, l, r)]))
}

/// Quadrature against the closed forms at `k = 2..=kmax`.
pub fn verify_g_omega(kmax: usize, ctx: &OmegaContext) -> Result<VerificationReport> {
    if kmax < 2 {
        return Err(Error::InvalidParameter(format!("kmax must be >= 2, got {kmax}")));
    }
    let pairs = (2..=kmax)
        .map(|k| Ok((k, g_s_omega_integral(k as f64, ctx)?, g_k_omega_closed(k, ctx)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "g-omega",
        "int (-t)^{k-1}/((e^{2 pi i t}-1)(e^{-2 pi i w t}-1)) dt = closed form at integer k",
        kmax,
    )
    .param("omega", ctx.omega)
    .param("tol", ctx.tol)
    .compare_numeric(Tolerance::Absolute(ctx.tol), pairs))
}

/// `G_s(w)` on the contours at `epsilon` and `epsilon/2`.
pub fn verify_contour_independence(s: f64, ctx: &OmegaContext) -> Result<VerificationReport> {
    let a = g_s_omega_integral(s, ctx)?;
    let half = ctx.clone().with_epsilon(ctx.epsilon / 2.0)?;
    let b = g_s_omega_integral(s, &half)?;
    Ok(VerificationReport::new("contour-independence", "G_s(w) does not depend on eps", 0)
        .param("s", s)
        .param("omega", ctx.omega)
        .param("epsilon", ctx.epsilon)
        .param("tol", ctx.tol)
        .compare_numeric(Tolerance::Absolute(ctx.tol), [(0, a, b)]))
}

/// Duality `Z(b^a g_{b+1}) = Z(b^b g_{a+1})` for the given pairs, `Z_w(e_2)` against
/// `zeta(2)(1 - w^2) - pi i w`, and `Z_w(h^{-3} phi_3) = G_3(w)`.
pub fn verify_depth_one(pairs: &[(usize, usize)], ctx: &OmegaContext) -> Result<VerificationReport> {
    let tol = Tolerance::Absolute(ctx.tol);
    let dual = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| Ok((i, z_omega_depth1(a, b, ctx)?, z_omega_depth1(b, a, ctx)?)))
        .collect::<Result<Vec<_>>>()?;
    let dual = VerificationReport::new("omega-duality", "Z_w(b^a g_{b+1}) = Z_w(b^b g_{a+1})", pairs.len())
        .compare_numeric(tol, dual);
    let w = ctx.omega;
    let e2 = z_omega(&make_e(2)?, ctx)?;
    let oracle = Complex64::new(PI * PI / 6.0 * (1.0 - w * w), -PI * w);
    let e2 = VerificationReport::new("omega-e2", "Z_w(e_2) = zeta(2)(1 - w^2) - pi i w", 2).compare_numeric(tol, [(2, e2, oracle)]);
    let phi = z_omega(&make_phi(3)?.shift_hbar(-3), ctx)?;
    let g3 = g_s_omega_integral(3.0, ctx)?;
    let phi = VerificationReport::new("omega-phi-g", "Z_w(h^{-k} phi_k) = G_k(w)", 3).compare_numeric(tol, [(3, phi, g3)]);
    Ok(VerificationReport::new("depth-one", "depth-one omega values", 0)
        .param("omega", w)
        .param("tol", ctx.tol)
        .merge(&[dual, e2, phi]))
}

/// For `L = 1` the exponential form against the sine/arcsin product; for `L >= 2` the
/// first coefficient against a quadrature of `Z_w(e_2^{oL})`.
pub fn verify_omega_generating(l: usize, rmax: usize, ctx: &OmegaContext) -> Result<VerificationReport> {
    let series = omega_generating_series(l, rmax, ctx)?;
    let report = VerificationReport::new(
        "omega-gen",
        "1 + sum (-1)^{(L-1)r} Z_w((e_2^{oL})^r) X^r = exp(L sum X^n (...))",
        rmax,
    )
    .param("L", l)
    .param("omega", ctx.omega)
    .param("tol", ctx.tol);
    if l == 1 {
        let cor = sine_product_series(rmax, ctx)?;
        Ok(report.compare_numeric(Tolerance::Absolute(ctx.tol), (0..=rmax).map(|r| (r, series[r], cor[r]))))
    } else {
        let z = z_omega(&circ_power(&make_e(2)?, l)?, ctx)?;
        Ok(report.compare_numeric(Tolerance::Absolute(ctx.tol), [(1, series[1], z)]))
    }
}

/// `Z_w(e_2^r)` against `pi^{2r}/(2r+1)!` for `r <= rmax`, with relative tolerance `tol`.
pub fn verify_omega_limit(rmax: usize, tol: f64, ctx: &OmegaContext) -> Result<VerificationReport> {
    let series = omega_generating_series(1, rmax, ctx)?;
    let pairs = (1..=rmax).map(|r| {
        let limit = PI.powi(2 * r as i32) / to_f64(&big(&factorial(2 * r + 1)));
        (r, series[r], real(limit))
    });
    Ok(VerificationReport::new("omega-limit", "Z_w(e_2^r) -> pi^{2r}/(2r+1)! as w -> 0", rmax)
        .param("omega", ctx.omega)
        .param("tol", tol)
        .compare_numeric(Tolerance::Relative(tol), pairs))
}

/// One row of `table g-omega`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaRow {
    pub op: String,
    pub params: BTreeMap<String, String>,
    pub value_re: f64,
    pub value_im: f64,
    pub reference: Scalar,
    pub abs_err: f64,
}

impl OmegaRow {
    pub fn new(op: &str, params: &[(&str, String)], value: Complex64, reference: Complex64) -> Self {
        Self {
            op: op.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            value_re: value.re,
            value_im: value.im,
            reference: Scalar::from(reference),
            abs_err: (value - reference).norm(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(w: f64, tol: f64) -> OmegaContext {
        OmegaContext::new(w).unwrap().with_tol(tol).unwrap()
    }

    #[test]
    fn three_term_cases() {
        for (s, w) in [(2.0, 0.8), (2.5, 0.8), (4.0, 1.3)] {
            let r = verify_three_term(s, &ctx(w, 1e-7)).unwrap();
            assert!(r.is_verified(), "s={s}: {:?}", r.first_mismatch);
        }
    }

    #[test]
    fn g_omega_report() {
        let r = verify_g_omega(6, &ctx(0.7, 1e-6)).unwrap();
        assert!(r.is_verified(), "{:?}", r.first_mismatch);
    }

    #[test]
    fn contour_shift() {
        let r = verify_contour_independence(2.5, &ctx(0.7, 1e-8)).unwrap();
        assert!(r.is_verified(), "{:?}", r.first_mismatch);
    }

    #[test]
    fn depth_one_report() {
        let r = verify_depth_one(&[(0, 1), (1, 2), (2, 3)], &ctx(0.5, 1e-7)).unwrap();
        assert!(r.is_verified(), "{:?}", r.first_mismatch);
    }

    #[test]
    fn generating_report() {
        assert!(verify_omega_generating(1, 4, &ctx(0.5, 1e-10)).unwrap().is_verified());
        assert!(verify_omega_generating(2, 2, &ctx(0.5, 1e-6)).unwrap().is_verified());
    }

    #[test]
    fn limit_real_part_and_offset() {
        let w = 1e-4;
        let c = ctx(w, 1e-8);
        let s = omega_generating_series(1, 3, &c).unwrap();
        for r in 1..=3 {
            let limit = PI.powi(2 * r as i32) / to_f64(&big(&factorial(2 * r + 1)));
            assert!((s[r].re - limit).abs() < 1e-6 * limit);
        }
        // Z_w(e_2) = zeta(2)(1 - w^2) - pi i w exactly
        assert!((s[1].im + PI * w).abs() < 1e-12);
    }
}
