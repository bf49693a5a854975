use mzv_harmonic::algebra::{
    circ, circ_power, concat_mul, harmonic_mul, harmonic_mul_words_uncached, parse_element, AlgebraElement, Letter,
    Word,
};
use mzv_harmonic::algseries::{geometric_inverse, AlgSeries};
use mzv_harmonic::arith::{rat, LaurentPoly, RatSeries, Rational};
use num_integer::Integer;
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::B), (1u32..=3).prop_map(Letter::G)]
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max_len).prop_map(Word::new)
}

fn coeff() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..=4, 1i64..=3, -1i32..=1).prop_map(|(n, d, k)| LaurentPoly::monomial(rat(n, d), k))
}

fn element(max_len: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((word(max_len), coeff()), 1..=3).prop_map(|terms| {
        let mut e = AlgebraElement::zero();
        for (w, c) in terms {
            e.add_term(w, &c);
        }
        e
    })
}

fn letter_element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((letter(), coeff()), 1..=3).prop_map(|terms| {
        let mut e = AlgebraElement::zero();
        for (l, c) in terms {
            e.add_term(Word::new(vec![l]), &c);
        }
        e
    })
}

/// Drops trailing-`b` words.
fn admissible(e: AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (w, c) in e.terms() {
        if w.is_admissible() {
            out.add_term(w.clone(), c);
        }
    }
    out
}

/// `1/(1 + h)` by concatenation, `h` without constant term.
fn concat_inverse(h: &AlgSeries) -> AlgSeries {
    let mut out = AlgSeries::one(h.order());
    let mut power = AlgSeries::one(h.order());
    for _ in 0..h.order() {
        power = power.concat_mul(h).neg();
        if power.is_zero() {
            break;
        }
        out = out.add(&power);
    }
    out
}

fn shift_x(f: &AlgSeries, k: usize) -> AlgSeries {
    let mut c = vec![AlgebraElement::zero(); f.order() + 1];
    for n in 0..=f.order() {
        if n + k <= f.order() {
            c[n + k] = f.coeff(n).clone();
        }
    }
    AlgSeries::new(f.order(), c)
}

fn circ_series(f: &AlgSeries, g: &AlgSeries) -> AlgSeries {
    let order = f.order();
    let mut c = vec![AlgebraElement::zero(); order + 1];
    for a in 0..=order {
        for b in 0..=order - a {
            c[a + b] = &c[a + b] + &circ(f.coeff(a), g.coeff(b)).unwrap();
        }
    }
    AlgSeries::new(order, c)
}

fn letter_series(order: usize, deg: usize) -> impl Strategy<Value = AlgSeries> {
    prop::collection::vec(letter_element(), deg + 1).prop_map(move |c| {
        let mut coeffs = vec![AlgebraElement::zero(); order + 1];
        for (i, e) in c.into_iter().enumerate() {
            coeffs[i] = e;
        }
        AlgSeries::new(order, coeffs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn harmonic_commutative(a in element(2), b in element(2)) {
        prop_assert_eq!(harmonic_mul(&a, &b), harmonic_mul(&b, &a));
    }

    #[test]
    fn uncached_word_product_commutative(a in word(3), b in word(3)) {
        prop_assert_eq!(harmonic_mul_words_uncached(&a, &b), harmonic_mul_words_uncached(&b, &a));
    }

    #[test]
    fn harmonic_associative(a in element(2), b in element(2), c in element(1)) {
        prop_assert_eq!(
            harmonic_mul(&harmonic_mul(&a, &b), &c),
            harmonic_mul(&a, &harmonic_mul(&b, &c))
        );
    }

    #[test]
    fn harmonic_distributive(a in element(2), b in element(2), c in element(2)) {
        prop_assert_eq!(
            harmonic_mul(&a, &(&b + &c)),
            &harmonic_mul(&a, &b) + &harmonic_mul(&a, &c)
        );
    }

    #[test]
    fn harmonic_unit(a in element(3)) {
        prop_assert_eq!(harmonic_mul(&a, &AlgebraElement::one()), a);
    }

    #[test]
    fn additive_group(a in element(3), b in element(3)) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn concat_associative(a in element(2), b in element(2), c in element(2)) {
        prop_assert_eq!(concat_mul(&concat_mul(&a, &b), &c), concat_mul(&a, &concat_mul(&b, &c)));
    }

    #[test]
    fn circ_associative_commutative(u in letter_element(), v in letter_element(), w in letter_element()) {
        prop_assert_eq!(circ(&circ(&u, &v).unwrap(), &w).unwrap(), circ(&u, &circ(&v, &w).unwrap()).unwrap());
        prop_assert_eq!(circ(&u, &v).unwrap(), circ(&v, &u).unwrap());
    }

    #[test]
    fn admissible_part_closed(a in element(3), b in element(3)) {
        let p = harmonic_mul(&admissible(a), &admissible(b));
        prop_assert!(p.is_in_h0(), "{}", p);
    }

    #[test]
    fn text_round_trip(a in element(3)) {
        prop_assert_eq!(parse_element(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn exp_star_inverse(f in letter_series(5, 3)) {
        let mut c = f.coeffs().to_vec();
        c[0] = AlgebraElement::zero();
        let f = AlgSeries::new(5, c);
        let p = f.exp_star().unwrap().harmonic_mul(&f.neg().exp_star().unwrap());
        prop_assert_eq!(p, AlgSeries::one(5));
    }

    #[test]
    fn frac_prod(f in letter_series(5, 2), g in letter_series(5, 2)) {
        let lhs = concat_inverse(&shift_x(&f, 1)).harmonic_mul(&concat_inverse(&shift_x(&g, 1)));
        let denom = shift_x(&f.add(&g), 1).sub(&shift_x(&circ_series(&f, &g), 2));
        prop_assert_eq!(lhs, concat_inverse(&denom));
    }

    #[test]
    fn multisection_composes(c in prop::collection::vec(-9i64..=9, 13), a in 1usize..=4, b in 1usize..=4) {
        let f = RatSeries::from_rationals(12, &c.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>());
        let l = a.lcm(&b);
        let twice = f.multisection(a).multisection(b);
        prop_assert_eq!(twice, f.multisection(l).scale(&rat((a * b / l) as i64, 1)));
    }
}

/// `sum_{n>=1} (-1)^{n-1}/n u^{o n} X^n`
fn log_series(u: &AlgebraElement, order: usize) -> AlgSeries {
    let mut c = vec![AlgebraElement::zero(); order + 1];
    for n in 1..=order {
        let s = if n % 2 == 1 { 1 } else { -1 };
        c[n] = circ_power(u, n).unwrap().scale_rat(&rat(s, n as i64));
    }
    AlgSeries::new(order, c)
}

#[test]
fn exp_ast_order_8() {
    for u in [AlgebraElement::g(1), AlgebraElement::g(2), AlgebraElement::b()] {
        let lhs = geometric_inverse(&u, 1, -1, 8).unwrap();
        let rhs = log_series(&u, 8).exp_star().unwrap();
        assert_eq!(lhs, rhs, "u = {u}");
    }
}

#[test]
fn exp_star_inverse_order_8() {
    let f = log_series(&(AlgebraElement::g(1) + AlgebraElement::b().shift_hbar(-1)), 8);
    assert_eq!(f.exp_star().unwrap().harmonic_mul(&f.neg().exp_star().unwrap()), AlgSeries::one(8));
}

#[test]
fn cyclotomic_product() {
    let e2 = parse_element("h^-2*g2 + h^-1*g1").unwrap();
    for u in [AlgebraElement::g(1), AlgebraElement::g(2), e2] {
        assert!(u.is_in_zspan());
        // L = 2 has real roots of unity: 1/(1+uX) * 1/(1-uX) = 1/(1+u^{o2}X^2)
        let lhs = geometric_inverse(&u, 1, 1, 8).unwrap().harmonic_mul(&geometric_inverse(&u, 1, -1, 8).unwrap());
        assert_eq!(lhs, geometric_inverse(&circ_power(&u, 2).unwrap(), 2, 1, 8).unwrap());

        for l in 1..=3usize {
            // e_a(1, eps, ..., eps^{L-1}) from prod_j (1 + eps^j t) = exp(sum_j log(1 + eps^j t))
            let t = RatSeries::monomial(l, 1, rat(1, 1));
            let prod = t.log1p().unwrap().multisection(l).exp().unwrap();
            let e: Vec<Rational> = (1..=l).map(|a| prod.rational_coeff(a)).collect();
            for (a, ea) in e.iter().enumerate() {
                let want = if a + 1 == l { rat(if l % 2 == 1 { 1 } else { -1 }, 1) } else { rat(0, 1) };
                assert_eq!(*ea, want, "L={l} a={}", a + 1);
            }
            let mut c = vec![AlgebraElement::zero(); 9];
            for a in 1..=l {
                let s = if a % 2 == 1 { 1 } else { -1 };
                c[a] = circ_power(&u, a).unwrap().scale_rat(&(e[a - 1].clone() * rat(s, 1)));
            }
            let lhs = concat_inverse(&AlgSeries::new(8, c));
            assert_eq!(lhs, geometric_inverse(&circ_power(&u, l).unwrap(), l, 1, 8).unwrap(), "L={l}");
        }
    }
}

#[test]
fn product_example() {
    // (1 + e2 X) * (1 + e3 X) = 1 + (e2 + e3) X + (e2e3 + e3e2 + e5 + h e4) X^2
    let e = |s: &str| parse_element(s).unwrap();
    let lin = |u: AlgebraElement| AlgSeries::new(2, vec![AlgebraElement::one(), u, AlgebraElement::zero()]);
    let p = lin(e("e2")).harmonic_mul(&lin(e("e3")));
    assert_eq!(p.coeff(1), &e("e2 + e3"));
    assert_eq!(p.coeff(2), &e("e2 e3 + e3 e2 + e5 + h e4"));
}
