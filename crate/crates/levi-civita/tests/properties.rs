//! Property and regression tests for the invariants stated across the
//! modules: field axioms, order transitivity, measure laws, norm axioms,
//! representation theorems, and the documented counterexamples.

mod common;

use std::collections::HashMap;

use common::*;
use levi_civita::approx::{
    chebyshev_approx, extend_polynomial, step_approx, RealFunction, RealPolynomial,
};
use levi_civita::dist::{dirac_bump, dirac_bump_of_class, heaviside, pair};
use levi_civita::error::Error;
use levi_civita::exponent::{Exponent, Valuation};
use levi_civita::lp::{
    inner_product, lp_norm, sequence_norm, weak_limit, FunctionSequence, LimitVerdict,
    LpExponent, NumberSequence,
};
use levi_civita::measure::{Interval, MeasurableSet, PiecewiseSimple};
use levi_civita::number::{ComparisonOutcome, LcNumber};
use levi_civita::parse::{eval_number, parse};
use levi_civita::series::{elementary, Elementary, PowerSeries};
use proptest::prelude::*;

fn lc_strategy() -> impl Strategy<Value = LcNumber> {
    proptest::collection::vec(((-8i64..=8, 1i64..=4), -4.0f64..4.0), 0..6).prop_map(|terms| {
        LcNumber::from_terms(
            terms
                .into_iter()
                .filter(|&(_, c)| c.abs() > 0.01)
                .map(|((num, den), c)| (Exponent::new(num, den), c)),
        )
    })
}

proptest! {
    #[test]
    fn field_axioms(x in lc_strategy(), y in lc_strategy(), z in lc_strategy()) {
        let xy = &x + &y;
        let yx = &y + &x;
        prop_assert_eq!(xy.terms(), yx.terms());
        prop_assert!((&x * &y).approx_eq(&(&y * &x), 1e-12));
        prop_assert!((&(&x + &y) + &z).approx_eq(&(&x + &(&y + &z)), 1e-12));
        prop_assert!((&x * &(&y + &z)).approx_eq(&(&(&x * &y) + &(&x * &z)), 1e-12));
    }

    #[test]
    fn valuation_laws(x in lc_strategy(), y in lc_strategy()) {
        prop_assert_eq!((&x * &y).valuation(), x.valuation() + y.valuation());
        let min = x.valuation().min(y.valuation());
        prop_assert!((&x + &y).valuation() >= min);
        if x.valuation() != y.valuation() {
            prop_assert_eq!((&x + &y).valuation(), min);
        }
    }

    #[test]
    fn order_transitivity(x in lc_strategy(), y in lc_strategy(), z in lc_strategy()) {
        use ComparisonOutcome::Less;
        if x.compare(&y) == Less && y.compare(&z) == Less {
            prop_assert_eq!(x.compare(&z), Less);
        }
    }

    #[test]
    fn truncation_soundness(
        coeffs in proptest::collection::vec(-2.0f64..2.0, 1..8),
        lo_target in 2i64..6,
        extra in 1i64..6,
    ) {
        // Raising the evaluation target never changes emitted coefficients.
        let series = PowerSeries::truncation(
            LcNumber::zero(),
            coeffs.iter().map(|&c| LcNumber::from_real(c)).collect(),
            "test",
        );
        let x = LcNumber::d();
        let lo = series.eval(&x, Valuation::finite(lo_target)).unwrap();
        let hi = series.eval(&x, Valuation::finite(lo_target + extra)).unwrap();
        for &(q, c) in lo.terms() {
            prop_assert!((hi.coefficient(q) - c).abs() <= 1e-14 * c.abs().max(1.0));
        }
    }

    #[test]
    fn measure_additivity(
        a_ends in proptest::collection::vec(-4.0f64..4.0, 2..6),
        b_ends in proptest::collection::vec(-4.0f64..4.0, 2..6),
    ) {
        let build = |mut ends: Vec<f64>| {
            ends.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut intervals = Vec::new();
            for pair in ends.chunks(2) {
                if pair.len() == 2 && pair[1] - pair[0] > 1e-9 {
                    intervals.push(Interval::closed_real(pair[0], pair[1]));
                }
            }
            MeasurableSet::new(intervals)
        };
        let (a, b) = match (build(a_ends), build(b_ends)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()),
        };
        let union = a.union(&b).unwrap();
        let inter = a.intersect(&b).unwrap();
        let lhs = &union.measure() + &inter.measure();
        let rhs = &a.measure() + &b.measure();
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));

        // Monotonicity: A∩B ⊆ A.
        prop_assert!(!matches!(
            inter.measure().compare(&a.measure()),
            ComparisonOutcome::Greater
        ));
    }
}

#[test]
fn print_parse_round_trip_500() {
    // Printed expressions need not reparse to the identical tree (a
    // negative literal comes back as a negation), but they must evaluate
    // identically.
    let mut rng = common::Rng::new(0x9a15e);
    for _ in 0..500 {
        let e = random_expr(&mut rng, 3);
        let printed = e.to_string();
        let reparsed = parse(&printed)
            .unwrap_or_else(|err| panic!("`{printed}` failed to reparse: {err:?}"));
        for i in 0..5 {
            let x = -1.0 + 0.5 * i as f64;
            let a = levi_civita::parse::eval_real(&e, "x", x);
            let b = levi_civita::parse::eval_real(&reparsed, "x", x);
            match (a, b) {
                (Ok(a), Ok(b)) if a.is_finite() && b.is_finite() => {
                    assert!(
                        rel_err(a, b) < 1e-12,
                        "`{printed}` evaluates differently: {a} vs {b}"
                    );
                }
                (Err(_), Err(_)) => {}
                _ => {}
            }
        }
    }
}

#[test]
fn evaluation_is_referentially_transparent() {
    let e = parse("(1+d)/(2 - d^2) + sin(d)*(1+d)/(2 - d^2)").unwrap();
    let a = eval_number(&e, &HashMap::new(), Valuation::finite(9)).unwrap();
    let b = eval_number(&e, &HashMap::new(), Valuation::finite(9)).unwrap();
    assert_eq!(a.terms(), b.terms());
    assert_eq!(a.horizon(), b.horizon());
}

#[test]
fn monads_are_not_intervals() {
    // Non-infinitesimal radius: the interval holds points that are not
    // infinitely close to its inner point r.
    let interval = Interval::closed_real(0.0, 1.0);
    let r = LcNumber::from_real(0.5);
    let endpoint = interval.lo().clone();
    assert!(interval.contains(&endpoint).unwrap());
    let gap = (&endpoint - &r).abs().unwrap();
    assert!(
        gap.valuation() <= Valuation::finite(0),
        "|lo − r| is not infinitesimal, so lo ∉ μ(r)"
    );

    // Infinitesimal radius b − a: the point a + 2(b − a) is infinitely
    // close to a but outside the interval.
    let a = LcNumber::from_real(0.5);
    let b = &a + &LcNumber::d();
    let interval = Interval::closed(a.clone(), b.clone()).unwrap();
    let outside = &a + &(&b - &a).scale(2.0);
    assert!(!interval.contains(&outside).unwrap());
    let gap = (&outside - &a).abs().unwrap();
    assert!(gap.valuation() > Valuation::finite(0), "still in the monad of a");
}

#[test]
fn sum_of_lengths_magnitude() {
    // For a finite disjoint family, some interval's length has exactly
    // the valuation of the total measure.
    let mut rng = common::Rng::new(0x5e7);
    for _ in 0..100 {
        let mut intervals = Vec::new();
        let mut cursor = LcNumber::zero();
        for _ in 0..(1 + rng.usize_below(4)) {
            let q = rng.i64_in(0, 6);
            let len = LcNumber::monomial(rng.f64_in(0.1, 2.0), q);
            let next = &cursor + &len;
            intervals.push(Interval::closed(cursor.clone(), next.clone()).unwrap());
            cursor = &next + &LcNumber::one();
        }
        let set = MeasurableSet::new(intervals.clone()).unwrap();
        let total_val = set.measure().valuation();
        assert!(intervals.iter().all(|i| i.length().valuation() >= total_val));
        assert!(intervals.iter().any(|i| i.length().valuation() == total_val));
    }
}

#[test]
fn uniform_convergence_does_not_extend_pointwise() {
    // f_n = sin(n²x)/n converges uniformly on the reals; its canonical
    // extensions converge at real points but the derivative sequence
    // n·cos(n²x) has an unbounded constant coefficient at x = d.
    let at_real = NumberSequence::new("sin(n² · 0.3)/n", |n| {
        let n = n as f64 + 1.0;
        LcNumber::from_real((n * n * 0.3).sin() / n)
    });
    match weak_limit(&at_real, Exponent::int(4), 1e-2, 512) {
        LimitVerdict::Limit { value, .. } => assert!(value.is_zero()),
        v => panic!("expected limit 0 at a real point, got {v:?}"),
    }

    let at_d = NumberSequence::new("n·cos(n²d)", |n| {
        let n = n as i64 + 1;
        let arg = LcNumber::monomial((n * n) as f64, 1);
        elementary(Elementary::Cos, &arg, Valuation::finite(4))
            .unwrap()
            .scale(n as f64)
    });
    let verdict = weak_limit(&at_d, Exponent::int(4), 1e-2, 64);
    assert!(
        matches!(verdict, LimitVerdict::NoLimit { .. }),
        "n·cos(n²d) has coefficient n at d⁰: {verdict:?}"
    );
}

fn on_interval(coeffs: &[f64], a: f64, b: f64) -> PiecewiseSimple {
    PiecewiseSimple::new(vec![(
        Interval::closed_real(a, b),
        PowerSeries::real_polynomial(coeffs),
    )])
    .unwrap()
}

#[test]
fn norm_axioms() {
    let mut rng = common::Rng::new(0xa1);
    let set = MeasurableSet::interval_real(-1.0, 1.0);
    for _ in 0..40 {
        let f = on_interval(&random_real_poly(&mut rng, 4), -1.0, 1.0);
        let g = on_interval(&random_real_poly(&mut rng, 4), -1.0, 1.0);
        for p in [LpExponent::P(1), LpExponent::P(2), LpExponent::Infinity] {
            let nf = lp_norm(&f, &set, p, Valuation::Infinite).unwrap();
            let ng = lp_norm(&g, &set, p, Valuation::Infinite).unwrap();
            let nsum = lp_norm(&f.add(&g).unwrap(), &set, p, Valuation::Infinite).unwrap();
            let slack = &(&nf + &ng) - &nsum;
            assert!(slack.std_part() >= -1e-11, "triangle inequality, p = {p}");

            // Absolute homogeneity with a real and an infinitesimal scalar.
            for a in [LcNumber::from_real(-2.5), LcNumber::monomial(3.0, 2)] {
                let scaled = lp_norm(&f.scale(&a), &set, p, Valuation::Infinite).unwrap();
                let expected = &a.abs().unwrap() * &nf;
                assert!(
                    scaled.approx_eq(&expected, 1e-11),
                    "homogeneity failed, p = {p}: {scaled} vs {expected}"
                );
            }
        }
    }

    // ‖f‖_p = 0 exactly when f vanishes a.e.
    let zero_fn = PiecewiseSimple::zero();
    let point_mass = PiecewiseSimple::new(vec![(
        Interval::point(LcNumber::from_real(0.25)),
        PowerSeries::constant(LcNumber::from_real(9.0)),
    )])
    .unwrap();
    for p in [LpExponent::P(1), LpExponent::P(2)] {
        let n = lp_norm(&point_mass, &set, p, Valuation::Infinite).unwrap();
        assert!(n.is_zero());
    }
    assert!(point_mass.ae_eq(&zero_fn, &set).unwrap());
    let x = on_interval(&[0.0, 1.0], -1.0, 1.0);
    assert!(!lp_norm(&x, &set, LpExponent::P(1), Valuation::Infinite)
        .unwrap()
        .is_zero());
    assert!(!x.ae_eq(&zero_fn, &set).unwrap());
}

#[test]
fn squeeze_failure_is_preserved() {
    // Every term of (nd)^{-1} − 1 is positive, yet the weak limit is −1.
    let seq = NumberSequence::new("((n+1)d)^-1 − 1", |n| {
        &LcNumber::monomial(1.0 / (n as f64 + 1.0), -1) - &LcNumber::one()
    });
    for n in 0..8 {
        assert_eq!(seq.at(n).sign(), ComparisonOutcome::Greater);
    }
    match weak_limit(&seq, Exponent::int(8), 1e-2, 512) {
        LimitVerdict::Limit { value, .. } => {
            assert_eq!(value.terms(), &[(Exponent::int(0), -1.0)]);
            assert_eq!(value.sign(), ComparisonOutcome::Less);
        }
        v => panic!("expected limit −1, got {v:?}"),
    }
}

#[test]
fn sequence_norm_is_representative_independent() {
    let set = MeasurableSet::interval_real(0.0, 1.0);
    let xs = FunctionSequence::new("x", |_| on_interval(&[0.0, 1.0], 0.0, 1.0));
    let perturbed = FunctionSequence::new("x + d^n", |n| {
        PiecewiseSimple::new(vec![(
            Interval::closed_real(0.0, 1.0),
            PowerSeries::polynomial(
                LcNumber::zero(),
                vec![LcNumber::d_pow(Exponent::int(n as i64 + 1)), LcNumber::one()],
            ),
        )])
        .unwrap()
    });
    let a = sequence_norm(&xs, &set, LpExponent::P(1), Valuation::Infinite, 10).unwrap();
    let b = sequence_norm(&perturbed, &set, LpExponent::P(1), Valuation::Infinite, 10).unwrap();
    assert_eq!(a.terms(), b.terms(), "{a} vs {b}");
}

#[test]
fn cauchy_schwarz_and_self_product() {
    let mut rng = common::Rng::new(0xc5);
    let set = MeasurableSet::interval_real(-1.0, 1.0);
    for _ in 0..25 {
        let f = on_interval(&random_real_poly(&mut rng, 4), -1.0, 1.0);
        let g = on_interval(&random_real_poly(&mut rng, 4), -1.0, 1.0);
        let fs = {
            let f = f.clone();
            FunctionSequence::new("f", move |_| f.clone())
        };
        let gs = {
            let g = g.clone();
            FunctionSequence::new("g", move |_| g.clone())
        };
        let ip = inner_product(&fs, &gs, &set, Valuation::Infinite, 8).unwrap();
        let ip_t = inner_product(&gs, &fs, &set, Valuation::Infinite, 8).unwrap();
        assert!(ip.approx_eq(&ip_t, 1e-12), "symmetry");

        let nf = sequence_norm(&fs, &set, LpExponent::P(2), Valuation::Infinite, 8).unwrap();
        let ng = sequence_norm(&gs, &set, LpExponent::P(2), Valuation::Infinite, 8).unwrap();
        let defect = &(&(&nf * &nf) * &(&ng * &ng)) - &(&ip * &ip);
        assert!(defect.std_part() >= -1e-11, "Cauchy–Schwarz defect {defect}");

        let self_ip = inner_product(&fs, &fs, &set, Valuation::Infinite, 8).unwrap();
        assert!(
            self_ip.approx_eq(&(&nf * &nf), 1e-11),
            "⟨f,f⟩ = ‖f‖₂²"
        );
    }
}

#[test]
fn dirac_definition_clauses_for_the_bump_family() {
    for class in 1..=3u32 {
        for (r, q) in [(0.0, 1i64), (0.25, 2), (-0.5, 3)] {
            let center = LcNumber::from_real(r);
            let h = LcNumber::d_pow(q);
            let bump = dirac_bump_of_class(&center, &h, class).unwrap();

            // Unit mass under antiderivative evaluation.
            let mass = bump
                .body()
                .integrate(&MeasurableSet::from_interval(bump.support()))
                .unwrap();
            assert!((mass.std_part() - 1.0).abs() < 1e-12);

            // Nonnegativity: (1 − u²)^(k+1) ≥ 0 on the support; checked at
            // sample points including infinitesimal offsets.
            let series = &bump.body().pieces()[0].series;
            for t in [-0.9, -0.3, 0.0, 0.4, 0.99] {
                let x = &center + &h.scale(t);
                let v = series.eval(&x, Valuation::Infinite).unwrap();
                assert!(
                    !matches!(v.sign(), ComparisonOutcome::Less),
                    "bump must be nonnegative on its support"
                );
            }

            // Support is a width-2h interval around r with λ(h) > 0.
            let width = bump.support().length();
            assert_eq!(width.terms().len(), 1);
            assert!(width.valuation() > Valuation::finite(0));
        }
    }
}

#[test]
fn heaviside_power_product_rule_up_to_eight() {
    let bump = dirac_bump(&LcNumber::zero(), &LcNumber::d()).unwrap();
    let h = heaviside(&bump).unwrap();
    let ambient = MeasurableSet::from_interval(h.ambient().clone());
    for m in 0..=8u32 {
        let lhs = h.power_fn(m + 1).unwrap().derivative();
        let rhs = h
            .power_fn(m)
            .unwrap()
            .product(bump.body())
            .unwrap()
            .scale_real(m as f64 + 1.0);
        assert!(
            lhs.ae_eq(&rhs, &ambient).unwrap(),
            "(H^{})' = {}·H^{}·δ failed",
            m + 1,
            m + 1,
            m
        );
    }
}

#[test]
fn pairing_sandwich_bound() {
    // Each pairing value's standard part equals the approximant at the
    // center, the degenerate form of the min/max sandwich on the support.
    let f = RealFunction::analytic((-1.0, 1.0), |x| (x * 1.3).cos() + 0.5 * x);
    for r in [-0.3, 0.0, 0.2] {
        let bump = dirac_bump(&LcNumber::from_real(r), &LcNumber::d()).unwrap();
        for n in [2usize, 4, 8, 16] {
            let p = chebyshev_approx(&f, n);
            let prod = bump.body().product(&extend_polynomial(&p)).unwrap();
            let v = prod
                .integrate(&MeasurableSet::interval_real(-1.0, 1.0))
                .unwrap();
            assert!(
                (v.std_part() - p.eval(r)).abs() <= 1e-9,
                "sh(∫ δ·ext p_{n}) must equal p_{n}({r})"
            );
        }
    }
}

#[test]
fn pairing_consistency_across_test_functions() {
    let functions: Vec<(&str, fn(f64) -> f64)> = vec![
        ("cos", f64::cos),
        ("sin+2", |x| x.sin() + 2.0),
        ("exp/2", |x| (0.5 * x).exp()),
        ("poly", |x| 1.0 + x - 0.5 * x * x),
        ("rational", |x| 1.0 / (2.0 + x)),
        ("cos2x", |x| (2.0 * x).cos()),
        ("sinh-ish", |x| ((x).exp() - (-x).exp()) / 2.0 + 1.5),
        ("gauss-ish", |x| (-x * x / 2.0).exp()),
        ("wiggle", |x| (3.0 * x).sin() / 3.0 + 2.0),
        ("shifted", |x| (x - 0.2).powi(2) + 0.3),
    ];
    let schedule = [4usize, 8, 16];
    let bump = dirac_bump(&LcNumber::zero(), &LcNumber::d()).unwrap();
    for (name, f) in functions {
        let handle = RealFunction::analytic((-1.0, 1.0), f);
        let report = pair(bump.body(), &handle, &schedule, 1e-6).unwrap();
        let limit = report.limit.unwrap();
        assert!(
            (limit - f(0.0)).abs() <= 1e-6,
            "{name}: pairing limit {limit} vs f(0) = {}",
            f(0.0)
        );
    }
}

#[test]
fn extended_polynomial_norms_match_real_norms() {
    let mut rng = common::Rng::new(0xe77);
    for _ in 0..20 {
        let coeffs = random_real_poly(&mut rng, 5);
        let a = rng.f64_in(-1.5, 0.0);
        let b = a + rng.f64_in(0.5, 1.5);
        let p = RealPolynomial { coeffs: coeffs.clone(), domain: (a, b) };
        let f = extend_polynomial(&p);
        let set = MeasurableSet::interval_real(a, b);

        let n1 = lp_norm(&f, &set, LpExponent::P(1), Valuation::Infinite).unwrap();
        let oracle1 = simpson(|x| poly_eval(&coeffs, x).abs(), a, b, 1e-12);
        assert!(
            rel_err(n1.std_part(), oracle1) < 1e-8,
            "1-norm {} vs quadrature {oracle1}",
            n1.std_part()
        );

        let n2 = lp_norm(&f, &set, LpExponent::P(2), Valuation::Infinite).unwrap();
        let oracle2 = simpson(|x| poly_eval(&coeffs, x).powi(2), a, b, 1e-13).sqrt();
        assert!(
            rel_err(n2.std_part(), oracle2) < 1e-8,
            "2-norm {} vs quadrature {oracle2}",
            n2.std_part()
        );

        let ninf = lp_norm(&f, &set, LpExponent::Infinity, Valuation::Infinite).unwrap();
        let grid_max = (0..=2000)
            .map(|i| poly_eval(&coeffs, a + (b - a) * i as f64 / 2000.0).abs())
            .fold(0.0f64, f64::max);
        assert!(
            ninf.std_part() >= grid_max - 1e-9 && rel_err(ninf.std_part(), grid_max) < 1e-3,
            "∞-norm {} vs grid {grid_max}",
            ninf.std_part()
        );
    }
}

#[test]
fn chebyshev_sequences_are_weakly_cauchy_and_pointwise() {
    let f = RealFunction::continuous((-1.0, 1.0), |x| (2.0 * x).sin() + x.abs() / 4.0);
    let set = MeasurableSet::interval_real(-1.0, 1.0);
    let degrees = [4usize, 8, 16, 32];

    // Low-degree difference norms through the field machinery …
    let p4 = extend_polynomial(&chebyshev_approx(&f, 4));
    let p8 = extend_polynomial(&chebyshev_approx(&f, 8));
    let lc_diff = lp_norm(
        &p4.sub(&p8).unwrap(),
        &set,
        LpExponent::P(1),
        Valuation::Infinite,
    )
    .unwrap()
    .std_part();

    // … agree with quadrature, and the full evidence sequence (real
    // parts, which the coherence lemma equates with real integrals)
    // shrinks along the schedule.
    let polys: Vec<RealPolynomial> = degrees.iter().map(|&n| chebyshev_approx(&f, n)).collect();
    let mut diffs = Vec::new();
    for w in polys.windows(2) {
        let (pn, pm) = (&w[0], &w[1]);
        let d = simpson(|x| (pn.eval(x) - pm.eval(x)).abs(), -1.0, 1.0, 1e-10);
        diffs.push(d);
    }
    assert!(rel_err(lc_diff, diffs[0]) < 1e-6, "{lc_diff} vs {}", diffs[0]);
    for w in diffs.windows(2) {
        assert!(w[1] <= w[0] * 0.9 + 1e-6, "diff norms must shrink: {diffs:?}");
    }

    // Pointwise representation at 20 random real points.
    let mut rng = common::Rng::new(0x90e7);
    let p32 = chebyshev_approx(&f, 32);
    for _ in 0..20 {
        let x = rng.f64_in(-1.0, 1.0);
        assert!((p32.eval(x) - f.eval(x)).abs() < 1e-2);
    }
}

#[test]
fn step_function_norms_converge_to_the_real_norm() {
    let f = RealFunction::continuous((0.0, 1.0), f64::cos);
    let set = MeasurableSet::interval_real(0.0, 1.0);
    let oracle = simpson(|x| x.cos().abs(), 0.0, 1.0, 1e-12);
    let mut errors = Vec::new();
    for n in [2u32, 4, 6, 8] {
        let s = step_approx(&f, n).unwrap();
        let norm = lp_norm(&s, &set, LpExponent::P(1), Valuation::Infinite).unwrap();
        errors.push((norm.std_part() - oracle).abs());
    }
    for w in errors.windows(2) {
        assert!(w[1] <= w[0], "step-function norm error must shrink: {errors:?}");
    }
    assert!(*errors.last().unwrap() < 1e-4);
}

#[test]
fn single_functions_cannot_represent_rough_targets() {
    // Weierstrass-like partial sums at high frequency: single-piece
    // polynomial approximants do not stabilize within reachable degrees,
    // which is why representation uses sequences.
    let rough = RealFunction::continuous((-1.0, 1.0), |x| {
        (0..=8).map(|k| 0.5f64.powi(k) * (3.0f64.powi(k) * x).cos()).sum()
    });
    let mut sup_errors = Vec::new();
    for n in [8usize, 16, 32, 64] {
        let p = chebyshev_approx(&rough, n);
        let sup = (0..=2000)
            .map(|i| {
                let x = -1.0 + 2.0 * i as f64 / 2000.0;
                (p.eval(x) - rough.eval(x)).abs()
            })
            .fold(0.0f64, f64::max);
        sup_errors.push(sup);
    }
    assert!(
        sup_errors.iter().all(|&e| e > 0.01),
        "approximation error must stay large: {sup_errors:?}"
    );
    let last = sup_errors[sup_errors.len() - 1];
    let prev = sup_errors[sup_errors.len() - 2];
    assert!(
        last > prev * 0.3,
        "no stabilizing convergence within the schedule: {sup_errors:?}"
    );
}

#[test]
fn reciprocal_singularity_is_rejected_at_the_endpoint() {
    // 1/x expanded around 1 converges on (0, 2) but not at the closed
    // endpoint 0: integration over an interval reaching 0 must fail.
    let coeffs: Vec<LcNumber> = (0..40)
        .map(|k| LcNumber::from_real(if k % 2 == 0 { 1.0 } else { -1.0 }))
        .collect();
    let recip = PowerSeries::polynomial(LcNumber::one(), coeffs).with_radius(1.0);
    let f = PiecewiseSimple::new(vec![(
        Interval::closed_real(0.0, 1.5),
        recip,
    )])
    .unwrap();
    let err = f.integrate(&MeasurableSet::interval_real(0.0, 1.5));
    assert_eq!(err, Err(Error::NotInWeakConvergenceRegion));
}
