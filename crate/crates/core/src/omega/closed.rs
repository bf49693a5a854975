use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::arith::{big, factorial, to_f64};
use crate::combinatorics::bernoulli;
use crate::error::{Error, Result};

use super::OmegaContext;

const EM_TERMS: usize = 10;

/// `B_{2j}/(2j)!` for `j = 1..=EM_TERMS`.
fn em_coeffs() -> Vec<f64> {
    (1..=EM_TERMS).map(|j| to_f64(&(bernoulli(2 * j) / big(&factorial(2 * j))))).collect()
}

/// `s (s+1) ... (s+p-1)`
fn rising(s: f64, p: usize) -> f64 {
    (0..p).map(|i| s + i as f64).product()
}

/// `zeta(s, a) = sum_{k>=0} (a+k)^{-s}` for real `s > 1`, `a > 0`, by
/// Euler-Maclaurin after twelve direct terms.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(s > 1.0 && a > 0.0, "hurwitz_zeta needs s > 1 and a > 0");
    let direct = 12;
    let mut sum: f64 = (0..direct).map(|k| (a + k as f64).powf(-s)).sum();
    let x = a + direct as f64;
    sum += x.powf(1.0 - s) / (s - 1.0) + x.powf(-s) / 2.0;
    for (j, b) in em_coeffs().into_iter().enumerate() {
        let p = 2 * j + 1;
        sum += b * rising(s, p) * x.powf(-s - p as f64);
    }
    sum
}

/// `sum_{n >= n0} zeta(s, n w + c)`: `rows` direct terms, then Euler-Maclaurin in `n`
/// with `d/da zeta(s, a) = -s zeta(s+1, a)` and `int_a^inf zeta(s, x) dx = zeta(s-1, a)/(s-1)`.
fn row_sum(s: f64, w: f64, c: f64, n0: usize, rows: usize) -> f64 {
    let end = n0 + rows;
    let mut sum: f64 = (n0..end).map(|n| hurwitz_zeta(s, n as f64 * w + c)).sum();
    let a = end as f64 * w + c;
    sum += hurwitz_zeta(s - 1.0, a) / ((s - 1.0) * w) + hurwitz_zeta(s, a) / 2.0;
    for (j, b) in em_coeffs().into_iter().take(6).enumerate() {
        let p = 2 * j + 1;
        sum += b * rising(s, p) * w.powi(p as i32) * hurwitz_zeta(s + p as f64, a);
    }
    sum
}

/// `(sum_{m>=0,n>=1} (m+nw)^{-s}, sum_{m>=1,n>=0} (m+nw)^{-s})` for real `s > 2`.
pub fn lattice_sums(s: f64, ctx: &OmegaContext) -> Result<(f64, f64)> {
    if !(s > 2.0) {
        return Err(Error::InvalidParameter(format!("lattice sums need s > 2, got {s}")));
    }
    let w = ctx.omega;
    Ok((row_sum(s, w, 0.0, 1, ctx.lattice_rows), row_sum(s, w, 1.0, 0, ctx.lattice_rows)))
}

/// `(2 pi)^{-s} Gamma(s) (e^{-s pi i/2} S_1 - e^{s pi i/2} S_2)` for real `s > 2`.
pub fn g_series(s: f64, ctx: &OmegaContext) -> Result<Complex64> {
    let (s1, s2) = lattice_sums(s, ctx)?;
    let phase = Complex64::from_polar(1.0, s * PI / 2.0);
    Ok((2.0 * PI).powf(-s) * gamma(s) * (phase.conj() * s1 - phase * s2))
}

/// `zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!)`.
pub fn zeta_even(k: usize) -> f64 {
    assert!(k >= 2 && k.is_multiple_of(2), "zeta_even needs an even k >= 2");
    let b = to_f64(&(bernoulli(k) / big(&factorial(k))));
    let sign = if (k / 2) % 2 == 1 { 1.0 } else { -1.0 };
    sign * b * (2.0 * PI).powi(k as i32) / 2.0
}

/// `G_k(w)` at integers `k >= 2`: `(k-1)!/(2 pi i)^k zeta(k)(w^{-k} - 1) - delta_{k,2}/(4 pi i w)`
/// for even `k`, `(k-1)!/(2 pi i)^k (S_1 + S_2)` for odd `k`.
pub fn g_k_omega_closed(k: usize, ctx: &OmegaContext) -> Result<Complex64> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be >= 2, got {k}")));
    }
    let w = ctx.omega;
    let pre = to_f64(&big(&factorial(k - 1))) / Complex64::new(0.0, 2.0 * PI).powi(k as i32);
    if k.is_multiple_of(2) {
        let mut v = pre * zeta_even(k) * (w.powi(-(k as i32)) - 1.0);
        if k == 2 {
            v -= 1.0 / Complex64::new(0.0, 4.0 * PI * w);
        }
        Ok(v)
    } else {
        let (s1, s2) = lattice_sums(k as f64, ctx)?;
        Ok(pre * (s1 + s2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::g_s_omega_integral;

    #[test]
    fn hurwitz_at_one_is_zeta() {
        assert!((hurwitz_zeta(2.0, 1.0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((hurwitz_zeta(4.0, 1.0) - PI.powi(4) / 90.0).abs() < 1e-14);
        // zeta(s, 1/2) = (2^s - 1) zeta(s)
        assert!((hurwitz_zeta(2.0, 0.5) - 3.0 * PI * PI / 6.0).abs() < 1e-13);
    }

    #[test]
    fn hurwitz_direct_sum() {
        let (s, a) = (3.5, 0.37);
        let direct: f64 = (0..200_000).rev().map(|k| (a + k as f64).powf(-s)).sum();
        let tail = (a + 200_000.0f64).powf(1.0 - s) / (s - 1.0);
        let got = hurwitz_zeta(s, a);
        assert!((got - direct - tail).abs() < 1e-12, "{got} {}", direct + tail);
    }

    #[test]
    fn zeta_even_values() {
        assert!((zeta_even(2) - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_even(6) - PI.powi(6) / 945.0).abs() < 1e-14);
    }

    // At w = 1 each N = m + n is hit N times, so both sums are zeta(s-1).
    #[test]
    fn lattice_at_one() {
        let ctx = OmegaContext::new(1.0).unwrap();
        let (s1, s2) = lattice_sums(4.0, &ctx).unwrap();
        assert!((s1 - 1.2020569031595942).abs() < 1e-12);
        assert!((s1 - s2).abs() < 1e-13);
    }

    // truncated box sum with a crude remainder, for an irrational-ish w
    #[test]
    fn lattice_box_sum() {
        let w = 0.7;
        let ctx = OmegaContext::new(w).unwrap();
        let (s1, _) = lattice_sums(5.0, &ctx).unwrap();
        let mut direct = 0.0;
        for m in 0..3000 {
            for n in 1..3000 {
                direct += (m as f64 + n as f64 * w).powi(-5);
            }
        }
        assert!((s1 - direct).abs() < 1e-9, "{s1} vs {direct}");
    }

    #[test]
    fn closed_forms_match_integral() {
        for w in [0.7, 1.3] {
            let ctx = OmegaContext::new(w).unwrap().with_tol(1e-9).unwrap();
            for k in 2..=6 {
                let a = g_k_omega_closed(k, &ctx).unwrap();
                let b = g_s_omega_integral(k as f64, &ctx).unwrap();
                assert!((a - b).norm() < 1e-7, "w={w} k={k}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn series_form_at_five() {
        let ctx = OmegaContext::new(0.7).unwrap().with_tol(1e-9).unwrap();
        let a = g_series(5.0, &ctx).unwrap();
        let b = g_s_omega_integral(5.0, &ctx).unwrap();
        assert!((a - b).norm() < 1e-7);
        assert!(g_series(2.0, &ctx).is_err());
    }
}
