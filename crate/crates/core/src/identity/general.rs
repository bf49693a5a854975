use num_traits::Zero;

use crate::algebra::{circ_power, make_e, psi};
use crate::algseries::{geometric_inverse, inv_factorial, AlgSeries};
use crate::arith::{big, binomial, int, sign_pow, RatSeries, Rational};
use crate::combinatorics::harmonic2;
use crate::error::Result;
use crate::report::VerificationReport;

use super::alpha::{alpha_power_sums, log_sum_powers};
use super::{compare_series, PhiSource, PolynomialSpec};

/// `-sum_{k>=2} h^{-k}/k! phi_k * S_k(X)` for the given log-power sums `S_k`
/// (indexed by `k`, entries below 2 ignored).
pub fn exponent_from_sums(sums: &[RatSeries], phis: &PhiSource, order: usize) -> Result<AlgSeries> {
    let mut out = AlgSeries::zero(order);
    for (k, s) in sums.iter().enumerate().skip(2) {
        if s.is_zero() {
            continue;
        }
        let u = phis.phi(k)?.shift_hbar(-(k as i32)).scale_rat(&-inv_factorial(k));
        out = out.add(&AlgSeries::from_rat_series(&s.truncate(order), &u)?);
    }
    Ok(out)
}

/// Both sides of the general identity
/// `1/(1 + psi_P^{oL} X^{NL}) = exp_*(-sum_k h^{-k}/k! phi_k sum_m Log(1 - alpha)^k)`.
pub fn main_identity_sides(
    p: &PolynomialSpec,
    l: usize,
    order: usize,
    phis: &PhiSource,
) -> Result<(AlgSeries, AlgSeries)> {
    let nl = p.degree() * l;
    let u = circ_power(&psi(p), l)?;
    let lhs = geometric_inverse(&u, nl, 1, order)?;
    let a = alpha_power_sums(p, l, order, order)?;
    let mut sums = vec![RatSeries::zero(order); order + 1];
    for (k, slot) in sums.iter_mut().enumerate().skip(2) {
        *slot = log_sum_powers(&a, k, order)?;
    }
    let rhs = exponent_from_sums(&sums, phis, order)?.exp_star()?;
    Ok((lhs, rhs))
}

pub fn verify_main_identity(p: &PolynomialSpec, l: usize, order: usize) -> Result<VerificationReport> {
    verify_main_identity_with(p, l, order, &PhiSource::default())
}

pub fn verify_main_identity_with(
    p: &PolynomialSpec,
    l: usize,
    order: usize,
    phis: &PhiSource,
) -> Result<VerificationReport> {
    let (lhs, rhs) = main_identity_sides(p, l, order, phis)?;
    let report = VerificationReport::new(
        "main-identity",
        "1/(1+psi_P^{oL} X^{NL}) = exp_*(-sum_{k>=2} h^{-k}/k! phi_k sum_m Log(1-alpha(eps_{NL}^m X))^k)",
        order,
    )
    .param("P", p)
    .param("L", l);
    Ok(compare_series(report, &lhs, &rhs))
}

/// The exponent `2 sum_k (-1)^{k-1}/(2k)! h^{-2k} phi_{2k} (2 arcsin(X/2))^{2k}`, with
/// `(2 arcsin(X/2))^{2k} = (2k)! sum_{n>=k} H2_{k-1}(n) / (n^2 binom(2n,n)) X^{2n}`.
pub fn bachmann_exponent(order: usize, phis: &PhiSource) -> Result<AlgSeries> {
    let mut out = AlgSeries::zero(order);
    let mut k = 1;
    while 2 * k <= order {
        let u = phis.phi(2 * k)?.shift_hbar(-2 * k as i32).scale_rat(&(sign_pow(k as i64 - 1) * int(2)));
        let mut c = vec![Rational::zero(); order + 1];
        for n in k..=order / 2 {
            c[2 * n] = harmonic2(k - 1, n) / (int((n * n) as i64) * big(&binomial(2 * n, n)));
        }
        out = out.add(&AlgSeries::from_rat_series(&RatSeries::from_rationals(order, &c), &u)?);
        k += 1;
    }
    Ok(out)
}

/// Checks the algebraic form of Bachmann's identity at `P = z^2 - z`, `L = 1`:
/// the general exponent under `X^2 -> -X^2` equals [`bachmann_exponent`], and
/// `1/(1 - h^{-2} e_2 X^2) = exp_*(bachmann exponent)`.
pub fn verify_bachmann_exact(order: usize, phis: &PhiSource) -> Result<VerificationReport> {
    let p = PolynomialSpec::z_pow_minus(2);
    let a = alpha_power_sums(&p, 1, order, order)?;
    let mut sums = vec![RatSeries::zero(order); order + 1];
    for (k, slot) in sums.iter_mut().enumerate().skip(2) {
        *slot = log_sum_powers(&a, k, order)?;
    }
    let general = exponent_from_sums(&sums, phis, order)?;
    let flipped = AlgSeries::new(
        order,
        (0..=order).map(|n| general.coeff(n).scale_rat(&sign_pow((n / 2) as i64))).collect(),
    );
    let bach = bachmann_exponent(order, phis)?;
    let exponent = compare_series(
        VerificationReport::new("bachmann-exponent", "general exponent at P=z^2-z under X -> iX", order),
        &flipped,
        &bach,
    );
    let lhs = geometric_inverse(&make_e(2)?.shift_hbar(-2), 2, -1, order)?;
    let rhs = bach.exp_star()?;
    let sides = compare_series(
        VerificationReport::new("bachmann-sides", "1/(1-h^{-2}e_2X^2) = exp_*(bachmann exponent)", order),
        &lhs,
        &rhs,
    );
    Ok(VerificationReport::new(
        "bachmann-exact",
        "1/(1-h^{-2}e_2X^2) = exp_*(2 sum_k (-1)^{k-1}/(2k)! h^{-2k} phi_{2k} (2 arcsin(X/2))^{2k})",
        order,
    )
    .merge(&[exponent, sides]))
}
