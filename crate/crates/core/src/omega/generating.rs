use std::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::{arcsin_series, big, binomial, factorial, to_f64};
use crate::error::{Error, Result};
use crate::identity::bernoulli_omega;

use super::OmegaContext;

fn czero(n: usize) -> Vec<Complex64> {
    vec![Complex64::new(0.0, 0.0); n]
}

fn cmul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().min(b.len());
    let mut out = czero(n);
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// `exp(a)` for `a(0) = 0`, by `n b_n = sum_k k a_k b_{n-k}`.
fn cexp(a: &[Complex64]) -> Vec<Complex64> {
    let mut b = czero(a.len());
    b[0] = Complex64::new(1.0, 0.0);
    for n in 1..a.len() {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 1..=n {
            s += a[k] * b[n - k] * k as f64;
        }
        b[n] = s / n as f64;
    }
    b
}

/// The exponent `L sum_n X^n (-(1/(2 pi i w)) (2 pi i w)^{2Ln}/((Ln)^2 binom(2Ln,Ln))
/// + B_{2Ln}(w)/(2Ln)! (2 pi)^{2Ln}/(2Ln))`, indexed by `n = 0..=rmax`.
pub fn generating_exponent(l: usize, rmax: usize, ctx: &OmegaContext) -> Result<Vec<Complex64>> {
    if l == 0 {
        return Err(Error::InvalidParameter("L must be >= 1".into()));
    }
    let w = ctx.omega;
    let h = ctx.hbar();
    let bern = bernoulli_omega(l * rmax.max(1))?;
    let mut out = czero(rmax + 1);
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        let j = l * n;
        let arcsin_part = -h.powi(2 * j as i32) / (h * (j * j) as f64 * to_f64(&big(&binomial(2 * j, j))));
        let b = bern[j - 1].eval_f64(w) / to_f64(&big(&factorial(2 * j))) * (2.0 * PI).powi(2 * j as i32) / (2 * j) as f64;
        *slot = (arcsin_part + b) * l as f64;
    }
    Ok(out)
}

/// `Z_w((e_2^{oL})^r)` for `r = 0..=rmax` from the closed-form exponential.
pub fn omega_generating_series(l: usize, rmax: usize, ctx: &OmegaContext) -> Result<Vec<Complex64>> {
    let c = cexp(&generating_exponent(l, rmax, ctx)?);
    Ok(c.into_iter()
        .enumerate()
        .map(|(r, v)| if ((l - 1) * r) % 2 == 1 { -v } else { v })
        .collect())
}

/// `Z_w(e_2^r)` for `r = 0..=rmax` from
/// `sin(w^{-1} arcsin(pi i w X))/(pi i X) exp(-arcsin^2(pi i w X)/(pi i w))`.
pub fn sine_product_series(rmax: usize, ctx: &OmegaContext) -> Result<Vec<Complex64>> {
    let order = 2 * rmax + 1;
    let w = ctx.omega;
    let y = Complex64::new(0.0, PI * w);
    let asin = arcsin_series(order);
    // A(X) = arcsin(pi i w X)
    let a: Vec<Complex64> = (0..=order).map(|n| to_f64(&asin.rational_coeff(n)) * y.powi(n as i32)).collect();
    let iz: Vec<Complex64> = a.iter().map(|c| c * Complex64::i() / w).collect();
    let plus = cexp(&iz);
    let minus = cexp(&iz.iter().map(|c| -c).collect::<Vec<_>>());
    let sin: Vec<Complex64> = plus.iter().zip(&minus).map(|(p, m)| (p - m) / (2.0 * Complex64::i())).collect();
    // divide by pi i X
    let mut ratio: Vec<Complex64> = sin[1..].iter().map(|c| c / Complex64::new(0.0, PI)).collect();
    ratio.push(Complex64::new(0.0, 0.0));
    let sq = cmul(&a, &a);
    let e = cexp(&sq.iter().map(|c| -c / y).collect::<Vec<_>>());
    let prod = cmul(&ratio, &e);
    Ok((0..=rmax).map(|r| prod[2 * r]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{circ_power, make_e};
    use crate::omega::z_omega;

    fn ctx(w: f64) -> OmegaContext {
        OmegaContext::new(w).unwrap().with_tol(1e-9).unwrap()
    }

    #[test]
    fn cexp_of_linear() {
        let a = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!((cexp(&a)[2] - 0.5).norm() < 1e-15);
    }

    #[test]
    fn two_closed_forms_agree() {
        let c = ctx(0.5);
        let t = omega_generating_series(1, 4, &c).unwrap();
        let k = sine_product_series(4, &c).unwrap();
        for r in 0..=4 {
            assert!((t[r] - k[r]).norm() < 1e-10, "r={r}: {} vs {}", t[r], k[r]);
        }
    }

    #[test]
    fn first_coefficient_oracle() {
        let w = 0.5;
        let k = sine_product_series(1, &ctx(w)).unwrap();
        let expected = Complex64::new(PI * PI / 6.0 * (1.0 - w * w), -PI * w);
        assert!((k[1] - expected).norm() < 1e-12);
    }

    // The first coefficient for L = 2, 3 against a depth-one quadrature of e_2^{oL}.
    #[test]
    fn higher_l_first_coefficient() {
        let c = ctx(0.5);
        for l in [2, 3] {
            let series = omega_generating_series(l, 1, &c).unwrap();
            let u = circ_power(&make_e(2).unwrap(), l).unwrap();
            let z = z_omega(&u, &c).unwrap();
            assert!((series[1] - z).norm() < 1e-6 * z.norm().max(1.0), "L={l}: {} vs {z}", series[1]);
        }
    }

    // With the arcsin term weighted -1/(pi i w) instead of -1/(2 pi i w), the first
    // coefficient misses the quadrature value of Z_w(e_2).
    #[test]
    fn unhalved_arcsin_term_disagrees_with_quadrature() {
        let c = ctx(0.5);
        let z = z_omega(&make_e(2).unwrap(), &c).unwrap();
        let e = generating_exponent(1, 1, &c).unwrap();
        let h = c.hbar();
        let unhalved = e[1] - h.powi(2) / (h * 2.0);
        assert!((e[1] - z).norm() < 1e-7);
        assert!((unhalved - z).norm() > 1.0);
    }
}
