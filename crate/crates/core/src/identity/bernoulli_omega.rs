use num_traits::Zero;

use crate::arith::{arcsin_series, big, factorial, int, rat, Param, Poly, RatSeries, Rational};
use crate::combinatorics::bernoulli;
use crate::error::{Error, Result};
use crate::report::VerificationReport;

/// `B_{2n}(w)` for `n = 1..=n_max`, from
/// `log(sin(w^{-1} arcsin(pi i w x)) / (pi i x)) = sum_n B_{2n}(w)/(2n)! (2 pi x)^{2n}/(2n)`.
///
/// With `y = pi i x` the left side is `log(sin(T(y))/y)`, `T(y) = arcsin(w y)/w`,
/// whose `y`-coefficients lie in `Q[w]`, and `(2 pi x)^{2n} = (-4)^n y^{2n}`.
pub fn bernoulli_omega(n_max: usize) -> Result<Vec<Poly>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be >= 1".into()));
    }
    let order = 2 * n_max + 1;
    let asin = arcsin_series(order);
    // T(y) = sum a_j w^{2j} y^{2j+1}
    let t_coeffs: Vec<Poly> = (0..=order)
        .map(|d| {
            if d % 2 == 1 {
                let mut c = vec![Rational::zero(); d];
                c[d - 1] = asin.rational_coeff(d);
                Poly::new(c)
            } else {
                Poly::zero()
            }
        })
        .collect();
    let t = RatSeries::new(order, Some(Param::Omega), t_coeffs);
    // sin(T) = sum_i (-1)^i T^{2i+1}/(2i+1)!
    let t2 = t.mul(&t)?;
    let mut power = t.clone();
    let mut sin_t = RatSeries::new(order, Some(Param::Omega), Vec::new());
    let mut i = 0;
    while 2 * i < order {
        let c = crate::arith::sign_pow(i as i64) / big(&factorial(2 * i + 1));
        sin_t = sin_t.add(&power.scale(&c))?;
        power = power.mul(&t2)?;
        i += 1;
    }
    let ratio = sin_t.shift_down(1)?;
    let log = ratio.sub(&RatSeries::one(ratio.order()))?.log1p()?;
    Ok((1..=n_max)
        .map(|n| {
            let scale = big(&factorial(2 * n)) * int(2 * n as i64) / num_traits::pow(int(-4), n);
            log.coeff(2 * n).scale(&scale)
        })
        .collect())
}

/// The four polynomials listed for `B_2(w), ..., B_8(w)`.
pub fn bernoulli_omega_expected() -> Vec<Poly> {
    let p = |c: &[(i64, i64)]| Poly::new(c.iter().map(|&(n, d)| rat(n, d)).collect());
    vec![
        p(&[(1, 6), (0, 1), (-1, 6)]),
        p(&[(-1, 30), (0, 1), (-10, 30), (0, 1), (11, 30)]),
        p(&[(2, 84), (0, 1), (21, 84), (0, 1), (168, 84), (0, 1), (-191, 84)]),
        p(&[(-3, 90), (0, 1), (-40, 90), (0, 1), (-294, 90), (0, 1), (-2160, 90), (0, 1), (2497, 90)]),
    ]
}

/// Compares the computed polynomials with the listed ones, checks `B_{2n}(0) = B_{2n}`
/// and evenness in `w` for `n <= n_max`. `expected` replaces the listed
/// polynomials when given.
pub fn verify_bernoulli_omega(n_max: usize, expected: Option<&[Poly]>) -> Result<VerificationReport> {
    let listed = bernoulli_omega_expected();
    let expected = expected.unwrap_or(&listed);
    let got = bernoulli_omega(n_max.max(expected.len()))?;
    let w = |p: &Poly| p.render("w");
    let list = VerificationReport::new("bernoulli-omega-list", "B_2(w), ..., B_8(w) as listed", expected.len())
        .compare_exact(expected.iter().enumerate().map(|(i, e)| (2 * (i + 1), w(&got[i]), w(e))));
    let limit = VerificationReport::new("bernoulli-omega-limit", "B_{2n}(0) = B_{2n}", n_max)
        .compare_exact((1..=n_max).map(|n| (2 * n, got[n - 1].constant_term(), bernoulli(2 * n))));
    let even = VerificationReport::new("bernoulli-omega-even", "B_{2n}(w) is even in w", n_max).compare_exact(
        (1..=n_max).flat_map(|n| {
            let p = got[n - 1].clone();
            (0..=p.degree().unwrap_or(0))
                .filter(|i| i % 2 == 1)
                .map(move |i| (2 * n, p.coeff(i), Rational::zero()))
                .collect::<Vec<_>>()
        }),
    );
    Ok(VerificationReport::new(
        "bernoulli-omega",
        "log(sin(w^{-1} arcsin(pi i w x))/(pi i x)) = sum B_{2n}(w)/(2n)! (2 pi x)^{2n}/(2n)",
        n_max,
    )
    .merge(&[list, limit, even]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_polynomials() {
        let got = bernoulli_omega(4).unwrap();
        assert_eq!(got, bernoulli_omega_expected());
        assert_eq!(got[0].render("w"), "-1/6*w^2 + 1/6");
    }

    #[test]
    fn full_check_passes() {
        let r = verify_bernoulli_omega(6, None).unwrap();
        assert!(r.is_verified(), "{:?}", r.first_mismatch);
    }

    #[test]
    fn factored_forms_agree() {
        let w2m1 = Poly::new(vec![int(-1), int(0), int(1)]);
        let b4 = &w2m1 * &Poly::new(vec![int(1), int(0), int(11)]);
        assert_eq!(b4.scale(&rat(1, 30)), bernoulli_omega_expected()[1]);
        let b6 = &w2m1 * &Poly::new(vec![int(2), int(0), int(23), int(0), int(191)]);
        assert_eq!(b6.scale(&rat(-1, 84)), bernoulli_omega_expected()[2]);
    }

    #[test]
    fn perturbed_list_is_caught() {
        let mut bad = bernoulli_omega_expected();
        bad[2] = &bad[2] + &Poly::constant(rat(1, 1000));
        let r = verify_bernoulli_omega(6, Some(&bad)).unwrap();
        assert_eq!(r.mismatch_degree(), Some(6));
    }
}
