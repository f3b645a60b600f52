//! Invariant checks run over the shipped configurations: doubling sandwich,
//! analytic derivatives against finite differences, minimality of the Esscher
//! root, boundedness of the unit-integral ratios and the power-law scaling identity.

use serde::Serialize;

use crate::bounds::doubling_check;
use crate::configs::shipped_triplets;
use crate::esscher::{solve_esscher, EsscherOutcome, TruncatedExponent};
use crate::measure::{lemma52_bounds_check, tilted_integral, TiltedIntegralRequest, Variant};
use crate::model::{MeasureComponent, Side};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

const RADII: [f64; 3] = [1e-1, 1e-2, 1e-3];

/// Richardson-extrapolated central difference.
pub fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

fn doubling() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, t) in shipped_triplets() {
        let mut worst: Option<String> = None;
        for eps in RADII {
            match doubling_check(&t, eps) {
                Ok(_) => {}
                Err(crate::bounds::BoundsError::ZeroDenominator) => {}
                Err(e) => worst = Some(format!("eps={eps}: {e}")),
            }
        }
        out.push(CheckResult::new(format!("doubling/{name}"), worst.is_none(), worst.unwrap_or_else(|| "ratio in [1, 4]".into())));
    }
    out
}

fn derivatives_and_minimality() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, t) in shipped_triplets() {
        for eps in RADII {
            let lam = TruncatedExponent::new(&t, eps);
            let value = |u: f64| lam.value(u).unwrap_or(f64::NAN);
            let root = match solve_esscher(&t, eps) {
                Ok(EsscherOutcome::Root(s)) => Some(s),
                Ok(EsscherOutcome::NoRoot { .. }) => None,
                Err(e) => {
                    out.push(CheckResult::new(format!("esscher/{name}/eps={eps}"), false, e.to_string()));
                    continue;
                }
            };
            let base = root.map_or(0.0, |s| s.u_eps);
            let mut worst: f64 = 0.0;
            for s in [-2.0, -0.5, 0.7, 1.9] {
                let u = base + s / eps;
                let h = 0.01 / eps;
                let (Ok(d1), Ok(d2)) = (lam.d1(u), lam.d2(u)) else { continue };
                if !(d1.is_finite() && d2.is_finite()) {
                    continue;
                }
                let fd1 = central_difference(value, u, h);
                let fd2 = central_difference(|v| lam.d1(v).unwrap_or(f64::NAN), u, h);
                worst = worst.max((fd1 - d1).abs() / d1.abs().max(f64::MIN_POSITIVE));
                worst = worst.max((fd2 - d2).abs() / d2.abs().max(f64::MIN_POSITIVE));
            }
            out.push(CheckResult::new(
                format!("derivative/{name}/eps={eps}"),
                worst <= 1e-6,
                format!("max relative error {worst:.3e}"),
            ));
            if let Some(s) = root {
                let at = s.lambda_at_root;
                let ok = at <= 0.0
                    && [1e-3, 1e-1, 1.0, 10.0].iter().all(|&d| at <= value(s.u_eps + d) && at <= value(s.u_eps - d));
                out.push(CheckResult::new(
                    format!("minimality/{name}/eps={eps}"),
                    ok,
                    format!("u_eps={:.6e} lambda={:.6e} residual={:.2e}", s.u_eps, at, s.residual),
                ));
            }
        }
    }
    out
}

fn unit_integral_ratios() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for alpha in [0.0, 0.5, 1.2] {
        let rows: Vec<_> = [1.0, 10.0, 100.0].iter().map(|&g| lemma52_bounds_check(alpha, g)).collect();
        let spread = |pick: fn(&crate::measure::UnitIntegralRatios<f64>) -> Option<f64>| -> Option<f64> {
            let v: Vec<f64> = rows.iter().filter_map(|r| r.as_ref().ok().and_then(pick)).collect();
            (!v.is_empty()).then(|| v.iter().cloned().fold(0.0, f64::max) / v.iter().cloned().fold(f64::INFINITY, f64::min))
        };
        let spreads = [spread(|r| r.second_order), spread(|r| r.first_order), spread(|r| r.plain)];
        let ok = spreads.iter().flatten().all(|&s| s.is_finite() && s < 10.0);
        out.push(CheckResult::new(format!("unit_ratios/alpha={alpha}"), ok, format!("max/min over gamma: {spreads:?}")));
    }
    out
}

fn scaling_identity() -> Vec<CheckResult> {
    let mut worst: f64 = 0.0;
    for alpha in [-0.5, 0.3, 1.1, 1.7] {
        let comp = [MeasureComponent::power_law(1.0, alpha, Side::Positive)];
        for (eps, u) in [(0.01, 30.0), (0.2, -40.0), (0.001, 5000.0)] {
            for (variant, m) in [(Variant::Compensated2, 0.0), (Variant::Compensated1x, 1.0), (Variant::Moment2Tilted, 2.0)] {
                let at = |e: f64, v: f64| tilted_integral(&comp, &TiltedIntegralRequest { eps: e, u: v, variant }).map(|i| i.value);
                if let (Ok(lhs), Ok(unit)) = (at(eps, u), at(1.0, u * eps)) {
                    let rhs = eps.powf(m - alpha) * unit;
                    worst = worst.max((lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE));
                }
            }
        }
    }
    vec![CheckResult::new("scaling_identity", worst <= 1e-12, format!("max relative error {worst:.3e}"))]
}

/// Runs every check.
pub fn run_selftest() -> Vec<CheckResult> {
    let mut all = doubling();
    all.extend(derivatives_and_minimality());
    all.extend(unit_integral_ratios());
    all.extend(scaling_identity());
    all
}
