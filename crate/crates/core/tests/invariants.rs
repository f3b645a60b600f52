use proptest::prelude::*;

use smalldev::bounds::{doubling_check, theorem15, BoundsError};
use smalldev::catalog::{asymptotic_rate, poisson_tail_exponent, FamilyDrift, NamedFamily};
use smalldev::classify::classify;
use smalldev::esscher::{solve_esscher, solve_esscher_with, EsscherOutcome, NoRootReason, SolveOptions};
use smalldev::measure::{tilted_integral, Extended, TiltedIntegralRequest, Variant};
use smalldev::{Component, PowerLaw, Rate, Side, Triplet};

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Positive), Just(Side::Negative)]
}

/// Tempered power law with a finite or infinite cutoff; infinite cutoffs get
/// enough tempering (or a large enough index) to keep the tail finite.
fn power_law() -> impl Strategy<Value = Component> {
    (0.1f64..3.0, -0.9f64..1.9, 0.0f64..2.0, side(), any::<bool>()).prop_map(|(c, alpha, lambda, s, infinite)| {
        let infinite = infinite && (lambda > 0.05 || alpha > 0.05);
        let cutoff = if infinite { f64::INFINITY } else { 1.0 };
        Component::PowerLaw(PowerLaw::tempered(c, alpha, lambda, s).with_cutoff(cutoff))
    })
}

fn component() -> impl Strategy<Value = Component> {
    prop_oneof![
        3 => power_law(),
        1 => (0.05f64..2.0, 0.01f64..3.0, side()).prop_map(|(x, m, s)| Component::atom(x * s.sign::<f64>(), m)),
    ]
}

fn triplet() -> impl Strategy<Value = Triplet> {
    (
        prop::collection::vec(component(), 1..4),
        prop_oneof![3 => Just(0.0), 1 => 0.01f64..2.0],
        -2.0f64..2.0,
        any::<bool>(),
    )
        .prop_map(|(comps, s2, d, effective)| {
            if effective {
                Triplet::with_effective_drift(comps, s2, d)
            } else {
                Triplet::new(comps, s2, d)
            }
        })
        .prop_filter("valid triplet", |t| t.validate().is_valid())
}

fn radius() -> impl Strategy<Value = f64> {
    (-3.0f64..-0.5).prop_map(|e| 10f64.powf(e))
}

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn validation_is_pure_and_reflection_is_an_involution(t in triplet()) {
        prop_assert_eq!(t.validate(), t.validate());
        prop_assert_eq!(format!("{:?}", t.reflect().reflect()), format!("{t:?}"));
        prop_assert_eq!(t.reflect().validate().is_valid(), t.validate().is_valid());
    }

    #[test]
    fn rate_decreases_in_eps(p in 0.5f64..3.0, q in -1.0f64..1.0, r in -1.0f64..1.0, e1 in 1e-8f64..1e-3, f in 0.01f64..0.99) {
        // below 1e-3 the log factors change the log-log slope by at most 0.22 < p
        let rate = Rate::weak(p, q, r, "random");
        let e0 = e1 * f;
        let (a, b) = (rate.eval(e0).unwrap(), rate.eval(e1).unwrap());
        prop_assert!(a >= b, "rate({e0}) = {a} < rate({e1}) = {b}");
    }

    #[test]
    fn compensated1x_is_increasing_in_u(comp in power_law(), eps in radius(), u in -50.0f64..50.0, du in 0.01f64..20.0) {
        let at = |v: f64| tilted_integral(std::slice::from_ref(&comp), &TiltedIntegralRequest { eps, u: v / eps, variant: Variant::Compensated1x }).unwrap().value;
        let (lo, hi) = (at(u), at(u + du));
        prop_assert!(hi >= lo - 1e-9 * lo.abs().max(hi.abs()), "{lo} > {hi}");
    }

    #[test]
    fn compensated2_is_convex_with_flat_origin(comp in power_law(), eps in radius(), u in -30.0f64..30.0, h in 0.01f64..10.0) {
        let at = |v: f64| tilted_integral(std::slice::from_ref(&comp), &TiltedIntegralRequest { eps, u: v / eps, variant: Variant::Compensated2 }).unwrap().value;
        prop_assert_eq!(at(0.0), 0.0);
        let (l, m, r) = (at(u - h), at(u), at(u + h));
        prop_assert!(l + r - 2.0 * m >= -1e-8 * (l.abs() + r.abs()), "not convex: {l} {m} {r}");
        prop_assert!(m >= -1e-12 * m.abs().max(1.0));
        // zero slope at the origin: the value is second order
        let tiny = at(1e-4);
        let curvature = at(1.0);
        prop_assert!(tiny <= 1e-6 * curvature.max(f64::MIN_POSITIVE) * 1.01 + f64::MIN_POSITIVE);
    }

    #[test]
    fn reflection_swaps_classification(t in triplet()) {
        let a = classify(&t);
        let b = classify(&t.reflect());
        prop_assert_eq!(a.has_sdp, b.has_sdp);
        prop_assert_eq!(a.is_type_i, b.is_type_i);
        prop_assert_eq!(a.is_subordinator, b.is_neg_subordinator);
        prop_assert_eq!(a.is_neg_subordinator, b.is_subordinator);
        prop_assert_eq!(a.is_compound_poisson, b.is_compound_poisson);
    }

    #[test]
    fn doubling_ratio_stays_in_unit_to_four(t in triplet(), eps in radius()) {
        match doubling_check(&t, eps) {
            Ok(r) => prop_assert!((1.0 - 1e-9..=4.0 + 1e-9).contains(&r), "ratio {r}"),
            Err(BoundsError::ZeroDenominator) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn poisson_tail_exponent_is_nonincreasing(s0 in 0.0f64..1.0, ds in 0.0f64..1.0, eps in radius()) {
        // the Chernoff bound is used for f <= 1/ε - 1, where it decreases in f
        let n = eps.recip() - 1.0;
        let (f0, df) = (s0 * n, ds * (1.0 - s0) * n);
        let val = |f: f64| match poisson_tail_exponent(f, eps) {
            Extended::Finite(v) => v,
            Extended::Infinite => f64::INFINITY,
        };
        prop_assert!(val(f0 + df) <= val(f0) + 1e-12 * val(f0).abs());
    }

    #[test]
    fn polynomial_rate_ignores_orientation(a1 in -0.9f64..1.9, a2 in -0.9f64..1.9, c1 in 0.0f64..3.0, c2 in 0.0f64..3.0, c in -2.0f64..2.0, effective in any::<bool>()) {
        prop_assume!(c1 + c2 > 0.0);
        let drift = if effective { FamilyDrift::Effective(c) } else { FamilyDrift::Compensated(c) };
        let neg = if effective { FamilyDrift::Effective(-c) } else { FamilyDrift::Compensated(-c) };
        let fam = NamedFamily::PolynomialMeasure { alpha1: a1, alpha2: a2, c1, c2, drift };
        let mirror = NamedFamily::PolynomialMeasure { alpha1: a2, alpha2: a1, c1: c2, c2: c1, drift: neg };
        prop_assert_eq!(asymptotic_rate(&fam), asymptotic_rate(&mirror));
    }

    #[test]
    fn esscher_root_does_not_depend_on_the_search(t in triplet(), eps in radius(), start in -5.0f64..5.0, step in 0.1f64..10.0) {
        let Ok(EsscherOutcome::Root(base)) = solve_esscher(&t, eps) else { return Ok(()) };
        let opts = SolveOptions { start: start / eps, initial_step: Some(step / eps), ..SolveOptions::default() };
        let other = solve_esscher_with(&t, eps, &opts).unwrap().root().unwrap();
        let scale = eps.recip().max(base.u_eps.abs());
        prop_assert!((base.u_eps - other.u_eps).abs() <= 1e-8 * scale, "{} vs {}", base.u_eps, other.u_eps);
    }

    #[test]
    fn bound_terms_are_nonnegative(t in triplet(), eps in radius()) {
        match theorem15(&t, eps) {
            Ok(r) => {
                for (name, v) in [("tail", r.tail_cost), ("esscher", r.esscher_cost), ("tilt", r.tilt_term), ("fbar", r.oscillation_cost), ("lower", r.lower_exponent)] {
                    prop_assert!(v >= 0.0, "{name} = {v}");
                }
                prop_assert!(r.upper_exponent >= r.lower_exponent);
            }
            Err(BoundsError::NoRoot(reason)) => prop_assert!(matches!(reason, NoRootReason::Subordinator | NoRootReason::NegSubordinator | NoRootReason::NoSdp)),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
