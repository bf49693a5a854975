//! Numerical evaluation of the omega-deformed values: contour integrals along
//! `-eps + iR`, closed forms at integer `s`, and the generating series.

mod closed;
mod generating;
mod verify;

use std::f64::consts::PI;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::algebra::{AlgebraElement, Letter};
use crate::error::{Error, Result};

pub use closed::{g_k_omega_closed, g_series, hurwitz_zeta, lattice_sums, zeta_even};
pub use generating::{sine_product_series, omega_generating_series, generating_exponent};
pub use verify::{
    three_term_residual, verify_contour_independence, verify_depth_one, verify_g_omega, verify_omega_generating,
    verify_omega_limit, verify_three_term, OmegaRow,
};

const NODES: usize = 20;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NODES).expect("degree >= 2"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct OmegaContext {
    pub omega: f64,
    /// The contour is `-epsilon + iR`.
    pub epsilon: f64,
    pub tol: f64,
    /// Node budget for the quadrature, in panels of 20 Gauss-Legendre nodes.
    pub max_panels: usize,
    /// Outer lattice rows summed directly before the Euler-Maclaurin tail.
    pub lattice_rows: usize,
}

impl OmegaContext {
    pub fn new(omega: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")));
        }
        Ok(Self { omega, epsilon: (1.0f64).min(1.0 / omega) / 2.0, tol: 1e-8, max_panels: 1 << 14, lattice_rows: 40 })
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        let bound = (1.0f64).min(1.0 / self.omega);
        if !(epsilon > 0.0 && epsilon < bound) {
            return Err(Error::InvalidParameter(format!("epsilon must lie in (0, {bound}), got {epsilon}")));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        let fresh = OmegaContext::new(omega)?;
        Ok(Self { omega, epsilon: fresh.epsilon, ..self.clone() })
    }

    /// Image of `h`.
    pub fn hbar(&self) -> Complex64 {
        Complex64::new(0.0, 2.0 * PI * self.omega)
    }
}

/// Decay data of an integrand on `-eps + iy`: `|f| ~ |y|^power e^{-up y}` as
/// `y -> +inf` and `|y|^power e^{-down |y|}` as `y -> -inf`.
struct Decay {
    up: f64,
    down: f64,
    power: f64,
}

/// First height (in steps of 1/2) where the tail estimate
/// `|f(y)| / (c - power/y)` drops below `target`.
fn cutoff(f: &impl Fn(Complex64) -> Complex64, eps: f64, sign: f64, rate: f64, power: f64, target: f64) -> Result<f64> {
    let mut y: f64 = (2.0 / rate).max(1.0);
    while y < 1e4 {
        let c = rate - power.max(0.0) / y;
        if c > 0.0 {
            let est = f(Complex64::new(-eps, sign * y)).norm() / c;
            if est.is_finite() && est < target {
                return Ok(y);
            }
        }
        y += 0.5;
    }
    Err(Error::Quadrature(format!("no truncation height found for decay rate {rate}")))
}

/// `int_{-eps+iR} f(t) dt` by composite Gauss-Legendre panels, doubling the
/// panel count until successive estimates agree to `tol/10`.
fn contour_integral(f: impl Fn(Complex64) -> Complex64, decay: Decay, ctx: &OmegaContext) -> Result<Complex64> {
    let eps = ctx.epsilon;
    let target = ctx.tol * 1e-2;
    let top = cutoff(&f, eps, 1.0, decay.up, decay.power, target)?;
    let bottom = cutoff(&f, eps, -1.0, decay.down, decay.power, target)?;
    let integrate = |panels: usize| -> Complex64 {
        let width = (top + bottom) / panels as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let a = -bottom + p as f64 * width;
            let mid = a + width / 2.0;
            let mut part = Complex64::new(0.0, 0.0);
            for (x, w) in rule().as_node_weight_pairs() {
                part += f(Complex64::new(-eps, mid + x * width / 2.0)) * *w;
            }
            sum += part * (width / 2.0);
        }
        // dt = i dy
        sum * Complex64::i()
    };
    let mut panels = ((top + bottom).ceil() as usize).max(4);
    let mut prev = integrate(panels);
    while panels * 2 <= ctx.max_panels {
        panels *= 2;
        let next = integrate(panels);
        if (next - prev).norm() < ctx.tol / 10.0 {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature(format!("panel budget {} exhausted", ctx.max_panels)))
}

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

/// `G_s(w) = int dt (-t)^{s-1} / ((e^{2 pi i t} - 1)(e^{-2 pi i w t} - 1))` along
/// `-eps + iR`, principal branch of `(-t)^{s-1}`.
pub fn g_s_omega_integral(s: impl Into<Complex64>, ctx: &OmegaContext) -> Result<Complex64> {
    let s: Complex64 = s.into();
    let w = ctx.omega;
    let f = move |t: Complex64| {
        let num = ((s - 1.0) * (-t).ln()).exp();
        num / (((two_pi_i() * t).exp() - 1.0) * ((-two_pi_i() * w * t).exp() - 1.0))
    };
    contour_integral(f, Decay { up: 2.0 * PI * w, down: 2.0 * PI, power: s.re - 1.0 }, ctx)
}

/// `Z_w(b^alpha g_{beta+1}) = int dt/(e^{2 pi i t} - 1) (-2 pi i w)^alpha binom(t+alpha, alpha)
/// (2 pi i w / (e^{-2 pi i w t} - 1))^{beta+1}`.
pub fn z_omega_depth1(alpha: usize, beta: usize, ctx: &OmegaContext) -> Result<Complex64> {
    let w = ctx.omega;
    let h = ctx.hbar();
    let pre = (-h).powi(alpha as i32);
    let f = move |t: Complex64| {
        let mut binom = Complex64::new(1.0, 0.0);
        for a in 1..=alpha {
            binom *= (t + a as f64) / a as f64;
        }
        let j = h / ((-two_pi_i() * w * t).exp() - 1.0);
        pre * binom * j.powi(beta as i32 + 1) / ((two_pi_i() * t).exp() - 1.0)
    };
    contour_integral(f, Decay { up: 2.0 * PI * w * (beta + 1) as f64, down: 2.0 * PI, power: alpha as f64 }, ctx)
}

/// `Z_w` on combinations of depth-one words `b^alpha g_k`, with `h -> 2 pi i w`.
pub fn z_omega(w: &AlgebraElement, ctx: &OmegaContext) -> Result<Complex64> {
    let h = ctx.hbar();
    let mut total = Complex64::new(0.0, 0.0);
    for (word, c) in w.terms() {
        let c = c.eval_complex(h);
        let letters = word.letters();
        let value = match letters.split_last() {
            None => Complex64::new(1.0, 0.0),
            Some((Letter::G(k), init)) if init.iter().all(|l| *l == Letter::B) => {
                z_omega_depth1(init.len(), *k as usize - 1, ctx)?
            }
            Some((Letter::B, _)) => return Err(Error::NotAdmissible(word.to_string())),
            Some(_) => return Err(Error::UnsupportedWord(word.to_string())),
        };
        total += c * value;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_e, make_phi};

    fn ctx(w: f64) -> OmegaContext {
        OmegaContext::new(w).unwrap().with_tol(1e-9).unwrap()
    }

    // (2 pi i)^{-2} zeta(2) (w^{-2} - 1) - 1/(4 pi i w)
    fn g2_closed(w: f64) -> Complex64 {
        let z2 = PI * PI / 6.0;
        two_pi_i().powi(-2) * z2 * (w.powi(-2) - 1.0) - 1.0 / (Complex64::new(0.0, 4.0 * PI * w))
    }

    #[test]
    fn g2_matches_closed_form() {
        for w in [0.7, 1.0, 1.3] {
            let g = g_s_omega_integral(2.0, &ctx(w)).unwrap();
            assert!((g - g2_closed(w)).norm() < 1e-8, "w={w}: {g}");
        }
    }

    #[test]
    fn g2_at_one_is_i_over_4pi() {
        let g = g_s_omega_integral(2.0, &ctx(1.0)).unwrap();
        assert!((g - Complex64::new(0.0, 1.0 / (4.0 * PI))).norm() < 1e-8);
    }

    #[test]
    fn z_e2_oracle() {
        let w = 0.5;
        let z = z_omega(&make_e(2).unwrap(), &ctx(w)).unwrap();
        let expected = Complex64::new(PI * PI / 6.0 * (1.0 - w * w), -PI * w);
        assert!((z - expected).norm() < 1e-7, "{z}");
    }

    #[test]
    fn phi3_is_g3() {
        let c = ctx(0.5);
        let z = z_omega(&make_phi(3).unwrap().shift_hbar(-3), &c).unwrap();
        let g = g_s_omega_integral(3.0, &c).unwrap();
        assert!((z - g).norm() < 1e-7);
    }

    #[test]
    fn duality_small() {
        let c = ctx(0.5);
        let a = z_omega_depth1(1, 2, &c).unwrap();
        let b = z_omega_depth1(2, 1, &c).unwrap();
        assert!((a - b).norm() < 1e-7, "{a} vs {b}");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(OmegaContext::new(0.0).is_err());
        assert!(OmegaContext::new(2.0).unwrap().with_epsilon(0.6).is_err());
        let w = crate::algebra::parse_element("g1*g1").unwrap();
        assert!(matches!(z_omega(&w, &ctx(0.5)), Err(Error::UnsupportedWord(_))));
        assert!(matches!(z_omega(&AlgebraElement::b(), &ctx(0.5)), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let mut c = ctx(0.5);
        c.max_panels = 8;
        c.tol = 1e-15;
        assert!(matches!(g_s_omega_integral(2.5, &c), Err(Error::Quadrature(_))));
    }
}
