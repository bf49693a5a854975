//! The desk-scale acceptance suite: numbered criteria, each a list of timed
//! checks producing verification reports.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{harmonic_mul, AlgebraElement, Letter, Word};
use crate::arith::{rat, LaurentPoly};
use crate::combinatorics::identities::{default_stirling_suite, stirling_suite};
use crate::combinatorics::{StirlingKind, StirlingTable};
use crate::error::Result;
use crate::identity::{
    bernoulli_omega_expected, verify_appendix_b, verify_appendix_b_with, verify_bachmann_exact,
    verify_bernoulli_omega, verify_main_identity, verify_main_identity_with, verify_solvable_case,
    verify_solvable_case_with, PhiSource, PolynomialSpec, VarphiPerturbation,
};
use crate::omega::{
    verify_contour_independence, verify_depth_one, verify_g_omega, verify_omega_generating, verify_omega_limit,
    verify_three_term, OmegaContext,
};
use crate::qeval::{verify_numeric, z_q, Kms, NumericIdentity, QContext};
use crate::report::{Tolerance, VerificationReport};

type Runner = Box<dyn Fn() -> Result<Vec<VerificationReport>> + Send + Sync>;

pub struct Check {
    pub name: String,
    pub budget: Option<Duration>,
    run: Runner,
}

impl Check {
    fn new(name: impl Into<String>, run: impl Fn() -> Result<Vec<VerificationReport>> + Send + Sync + 'static) -> Self {
        Self { name: name.into(), budget: None, run: Box::new(run) }
    }

    fn budget(mut self, secs: u64) -> Self {
        self.budget = Some(Duration::from_secs(secs));
        self
    }

    pub fn run(&self) -> CheckOutcome {
        let start = Instant::now();
        let result = (self.run)();
        let elapsed = start.elapsed();
        let (reports, error) = match result {
            Ok(r) => (r, None),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        CheckOutcome { name: self.name.clone(), reports, error, elapsed, budget: self.budget }
    }
}

pub struct CheckOutcome {
    pub name: String,
    pub reports: Vec<VerificationReport>,
    pub error: Option<String>,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl CheckOutcome {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.elapsed <= b)
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.within_budget() && self.reports.iter().all(VerificationReport::is_verified)
    }
}

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

fn one(r: Result<VerificationReport>) -> Result<Vec<VerificationReport>> {
    r.map(|r| vec![r])
}

fn poly(s: &str) -> PolynomialSpec {
    PolynomialSpec::parse(s).expect("fixed polynomial")
}

fn qctx(q: f64, tol: f64) -> QContext {
    QContext::new(q).and_then(|c| c.with_tol(tol)).expect("fixed q context")
}

fn wctx(w: f64, tol: f64) -> OmegaContext {
    OmegaContext::new(w).and_then(|c| c.with_tol(tol)).expect("fixed omega context")
}

/// A negative control passes when the perturbed check fails first at `expected`.
fn control(name: &str, report: VerificationReport, expected: usize) -> VerificationReport {
    let detected = report.mismatch_degree().map_or("none".to_string(), |d| d.to_string());
    VerificationReport::new(format!("negative-control/{name}"), "perturbed input fails at the perturbed degree", expected)
        .compare_exact([(expected, detected, expected.to_string())])
}

/// Random elements of the admissible part: one to three words of length at most
/// two over `g1, g2, g3`, with `b` allowed in front, and coefficients `c h^j`.
pub fn random_h0_element(rng: &mut impl Rng) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut letters = Vec::new();
        if rng.gen_bool(0.3) {
            letters.push(Letter::B);
        }
        for _ in 0..rng.gen_range(1..=2 - letters.len()) {
            letters.push(Letter::G(rng.gen_range(1..=3)));
        }
        let c = rat(rng.gen_range(-5..=5i64).max(1), rng.gen_range(1..=4));
        let c = if rng.gen_bool(0.5) { -c } else { c };
        out.add_term(Word::new(letters), &LaurentPoly::monomial(c, rng.gen_range(-1..=1)));
    }
    out
}

/// `Z(w * w') = Z(w) Z(w')` on `pairs` seeded random pairs, relative tolerance `tol`.
pub fn homomorphism_check(ctx: &QContext, pairs: usize, seed: u64, tol: f64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::new();
    for i in 0..pairs {
        let a = random_h0_element(&mut rng);
        let b = random_h0_element(&mut rng);
        let lhs = z_q(&harmonic_mul(&a, &b), ctx)?;
        let rhs = z_q(&a, ctx)? * z_q(&b, ctx)?;
        values.push((i, lhs.into(), rhs.into()));
    }
    let name = if ctx.kms.is_some() { "kms-homomorphism" } else { "zq-homomorphism" };
    Ok(VerificationReport::new(name, "Z(w * w') = Z(w) Z(w')", pairs)
        .param("q", ctx.q)
        .param("seed", seed)
        .compare_numeric(Tolerance::Relative(tol), values))
}

pub fn criteria() -> Vec<Criterion> {
    let mut out = Vec::new();

    let mut c1 = Vec::new();
    for p in ["z^2 - z", "z^3 - z^2", "z^3 - 2*z^2 + z", "z^4 - z^3"] {
        c1.push(Check::new(format!("main-identity P={p} L=1 order=10"), move || one(verify_main_identity(&poly(p), 1, 10))).budget(60));
    }
    c1.push(Check::new("main-identity P=z^2 - z L=2 order=8", || one(verify_main_identity(&poly("z^2 - z"), 2, 8))).budget(60));
    out.push(Criterion { id: 1, title: "exact general identity", checks: c1 });

    let c2 = [(2, 1), (3, 1), (2, 2)]
        .into_iter()
        .map(|(n, l)| Check::new(format!("solvable N={n} L={l} order=8"), move || one(verify_solvable_case(n, l, 8))))
        .collect();
    out.push(Criterion { id: 2, title: "exact solvable case and explicit exponent", checks: c2 });

    out.push(Criterion {
        id: 3,
        title: "exact Bachmann exponent",
        checks: vec![Check::new("bachmann-exact order=10", || one(verify_bachmann_exact(10, &PhiSource::default())))],
    });

    out.push(Criterion {
        id: 4,
        title: "Stirling identities",
        checks: vec![Check::new("stirling suite", || Ok(default_stirling_suite())).budget(5)],
    });

    out.push(Criterion {
        id: 5,
        title: "varphi properties",
        checks: vec![Check::new("appendix-b order=20", || one(verify_appendix_b(20)))],
    });

    let mut c6 = vec![Check::new("bachmann-q q=0.5 r<=4 tol=1e-8", || {
        one(verify_numeric(NumericIdentity::Bachmann, &qctx(0.5, 1e-8), 4))
    })];
    for q in [0.3, 0.5, 0.7] {
        c6.push(Check::new(format!("phik-g q={q} k<=6 tol=1e-10"), move || {
            one(verify_numeric(NumericIdentity::PhikG, &qctx(q, 1e-10), 6))
        }));
    }
    c6.push(Check::new("kms q=0.3 N=2 S={1} sign=-1 r<=3 tol=1e-7", || {
        let ctx = qctx(0.3, 1e-7).with_kms(Kms::new(2, [1], -1)?);
        one(verify_numeric(NumericIdentity::Kms, &ctx, 3))
    }));
    out.push(Criterion { id: 6, title: "numerical Bachmann, phi_k vs G_k, KMS", checks: c6 });

    out.push(Criterion {
        id: 7,
        title: "harmonic homomorphism on random pairs",
        checks: vec![
            Check::new("Z_q 50 pairs q=0.5", || one(homomorphism_check(&qctx(0.5, 1e-22), 50, 7, 1e-8))),
            Check::new("Z_q,S,N,eps 50 pairs q=0.5 N=2 S={1} sign=-1", || {
                let ctx = qctx(0.5, 1e-22).with_kms(Kms::new(2, [1], -1)?);
                one(homomorphism_check(&ctx, 50, 11, 1e-8))
            }),
        ],
    });

    out.push(Criterion {
        id: 8,
        title: "omega-Bernoulli polynomials",
        checks: vec![Check::new("bernoulli-omega n<=6", || one(verify_bernoulli_omega(6, None)))],
    });

    let mut c9 = Vec::new();
    for w in [0.7, 1.3] {
        c9.push(Check::new(format!("g-omega k=2..6 omega={w}"), move || one(verify_g_omega(6, &wctx(w, 1e-5)))));
    }
    for (s, w) in [(2.0, 0.8), (2.5, 0.8), (4.0, 1.3)] {
        c9.push(Check::new(format!("three-term s={s} omega={w}"), move || one(verify_three_term(s, &wctx(w, 1e-5)))));
    }
    c9.push(Check::new("contour-independence s=2.5 omega=0.7", || {
        one(verify_contour_independence(2.5, &wctx(0.7, 1e-6)))
    }));
    out.push(Criterion { id: 9, title: "G_s(omega) integral, closed forms, three-term relation", checks: c9 });

    out.push(Criterion {
        id: 10,
        title: "depth-one omega values",
        checks: vec![Check::new("depth-one omega=0.5", || {
            one(verify_depth_one(&[(0, 1), (1, 2), (2, 3)], &wctx(0.5, 1e-6)))
        })],
    });

    out.push(Criterion {
        id: 11,
        title: "omega generating series",
        checks: vec![
            Check::new("exponential vs sine-product form omega=0.5 r<=4", || one(verify_omega_generating(1, 4, &wctx(0.5, 1e-10)))),
            Check::new("limit omega=1e-4 r<=3 rel 1e-6", || one(verify_omega_limit(3, 1e-6, &wctx(1e-4, 1e-8)))),
        ],
    });

    out.push(Criterion { id: 12, title: "negative controls", checks: negative_controls() });
    out
}

fn negative_controls() -> Vec<Check> {
    vec![
        Check::new("main-identity phi_2 + g_1", || {
            let phis = PhiSource::default().perturb(2, AlgebraElement::g(1));
            one(Ok(control("main-identity", verify_main_identity_with(&poly("z^2 - z"), 1, 8, &phis)?, 2)))
        }),
        Check::new("main-identity phi_3 + g_1 at P=z^3-z^2", || {
            let phis = PhiSource::default().perturb(3, AlgebraElement::g(1));
            one(Ok(control("main-identity-cubic", verify_main_identity_with(&poly("z^3 - z^2"), 1, 8, &phis)?, 3)))
        }),
        Check::new("solvable N=3 phi_2 + g_1", || {
            let phis = PhiSource::default().perturb(2, AlgebraElement::g(1));
            one(Ok(control("solvable", verify_solvable_case_with(3, 1, 8, &phis)?, 3)))
        }),
        Check::new("bachmann-exact phi_4 + g_2", || {
            let phis = PhiSource::default().perturb(4, AlgebraElement::g(2));
            one(Ok(control("bachmann-exact", verify_bachmann_exact(8, &phis)?, 4)))
        }),
        Check::new("stirling {7 3} + 1", || {
            let first = StirlingTable::build(StirlingKind::First, 16);
            let second = StirlingTable::build(StirlingKind::Second, 16);
            let bad = second.with_override(7, 3, second.get_int(7, 3) + 1);
            let failing = stirling_suite(&first, &bad).into_iter().find(|r| !r.is_verified());
            let report = failing.unwrap_or_else(|| VerificationReport::new("stirling", "", 0));
            one(Ok(control("stirling", report, 7)))
        }),
        Check::new("varphi x^5 coefficient + 1/7", || {
            let p = VarphiPerturbation { degree: 5, delta: rat(1, 7) };
            one(Ok(control("appendix-b", verify_appendix_b_with(10, Some(&p))?, 5)))
        }),
        Check::new("B_6(w) + 1/1000", || {
            let mut bad = bernoulli_omega_expected();
            bad[2] = &bad[2] + &crate::arith::Poly::constant(rat(1, 1000));
            one(Ok(control("bernoulli-omega", verify_bernoulli_omega(6, Some(&bad))?, 6)))
        }),
    ]
}
