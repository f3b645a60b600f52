//! Two-sided exponent bounds on `-log P(sup_{t<=1} |X_t| <= r)` built from the
//! Esscher root, plus the martingale bounds and diagnostics around them.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::classify::effective_drift;
use crate::esscher::{solve_esscher, EsscherError, EsscherSolution, NoRootReason};
use crate::measure::{abs_moment, tail_mass, truncated_drift, MeasureError};
use crate::model::{LevyTriplet, RateExpression, Side};
use crate::real::{lit, Real};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("no Esscher root: {}", .0.explain())]
    NoRoot(NoRootReason),
    #[error(transparent)]
    Esscher(#[from] EsscherError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("martingale bounds need zero truncated drift, got b_eps = {0}")]
    NonzeroDrift(f64),
    #[error("symmetric rate needs a symmetric measure and b = 0")]
    NotSymmetric,
    #[error("N + F vanishes at 2*eps (no Gaussian part, no mass)")]
    ZeroDenominator,
    #[error("doubling ratio {0} outside [1, 4]")]
    DoublingViolation(f64),
    #[error("Gaussian rate needs sigma2 > 0")]
    NoGaussianPart,
}

/// Largest of the three cost terms (ties resolved towards the Esscher term).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominant {
    Tail,
    Esscher,
    Oscillation,
}

impl Dominant {
    pub fn as_str(self) -> &'static str {
        match self {
            Dominant::Tail => "tail",
            Dominant::Esscher => "esscher",
            Dominant::Oscillation => "oscillation",
        }
    }
}

/// Cost terms and exponent bounds at one radius.
///
/// `exp(-upper_exponent) <= P(‖X‖ <= 3ε)` and `P(‖X‖ <= ε/2) <= exp(-lower_exponent)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub eps: T,
    /// `ν([-ε, ε]^c)`
    pub tail_cost: T,
    /// `-Λ_ε(u_ε)`
    pub esscher_cost: T,
    /// `ε |u_ε|`
    pub tilt_term: T,
    /// `F̄(ε)`
    pub oscillation_cost: T,
    pub upper_exponent: T,
    /// Lower exponent clamped at 0.
    pub lower_exponent: T,
    pub lower_exponent_raw: T,
    pub tight: bool,
    pub tightness_ratio: T,
    pub dominant: Dominant,
    pub u_eps: T,
}

impl<T: Real> BoundReport<T> {
    /// `N + esscher_cost + F̄`, the two-sided weak rate when the tilt is negligible.
    pub fn total(&self) -> T {
        self.tail_cost + self.esscher_cost + self.oscillation_cost
    }
}

pub const DEFAULT_TIGHTNESS: f64 = 0.1;

/// Assembles the report from an already solved root.
pub fn report_from_solution<T: Real>(triplet: &LevyTriplet<T>, sol: &EsscherSolution<T>) -> Result<BoundReport<T>, BoundsError> {
    let eps = sol.eps;
    let tail_cost = tail_mass(triplet.components(), eps)?;
    let esscher_cost = (-sol.lambda_at_root).max(T::zero());
    let tilt_term = eps * sol.u_eps.abs();
    let osc = sol.fbar.max(T::zero());
    let three = lit::<T>(3.0);
    let upper = tail_cost + esscher_cost + three * tilt_term + lit::<T>(10.0) * osc + three;
    let raw = tail_cost + esscher_cost - lit::<T>(0.5) * tilt_term + osc / lit(12.0) - T::one();
    let dominant = if esscher_cost >= tail_cost && esscher_cost >= osc {
        Dominant::Esscher
    } else if tail_cost >= osc {
        Dominant::Tail
    } else {
        Dominant::Oscillation
    };
    let mut report = BoundReport {
        eps,
        tail_cost,
        esscher_cost,
        tilt_term,
        oscillation_cost: osc,
        upper_exponent: upper,
        lower_exponent: raw.max(T::zero()),
        lower_exponent_raw: raw,
        tight: false,
        tightness_ratio: T::zero(),
        dominant,
        u_eps: sol.u_eps,
    };
    let t = tightness_check(&report, lit(DEFAULT_TIGHTNESS));
    report.tight = t.tight;
    report.tightness_ratio = t.ratio;
    Ok(report)
}

/// Exponent bounds at radius `eps` (upper at `3ε`, lower at `ε/2`).
pub fn theorem15<T: Real>(triplet: &LevyTriplet<T>, eps: T) -> Result<BoundReport<T>, BoundsError> {
    match solve_esscher(triplet, eps)? {
        crate::esscher::EsscherOutcome::Root(sol) => report_from_solution(triplet, &sol),
        crate::esscher::EsscherOutcome::NoRoot { reason } => Err(BoundsError::NoRoot(reason)),
    }
}

/// `F(ε) = ε^{-2} (σ² + ∫_{-ε}^{ε} x² ν(dx))`.
pub fn f_function<T: Real>(triplet: &LevyTriplet<T>, eps: T) -> T {
    let m2 = abs_moment(triplet.components(), eps, lit(2.0), None).to_real();
    (triplet.sigma2() + m2) / (eps * eps)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MartingaleBounds<T> {
    pub f: T,
    /// `P(‖X‖ <= 3ε) >= exp(-(10F + 3))`
    pub lower_prob_exponent: T,
    /// `P(‖X‖ <= ε/2) <= exp(-(F/12 - 1))`
    pub upper_prob_exponent: T,
}

/// Bounds for the martingale formed by the jumps of size at most `eps` and the Gaussian part.
pub fn martingale_bounds<T: Real>(triplet: &LevyTriplet<T>, eps: T) -> Result<MartingaleBounds<T>, BoundsError> {
    let b_eps = truncated_drift(triplet, eps).value;
    if b_eps.abs() > lit::<T>(1e-12) {
        return Err(BoundsError::NonzeroDrift(b_eps.to_f64().unwrap_or(f64::NAN)));
    }
    let f = f_function(triplet, eps);
    Ok(MartingaleBounds {
        f,
        lower_prob_exponent: lit::<T>(10.0) * f + lit(3.0),
        upper_prob_exponent: f / lit(12.0) - T::one(),
    })
}

/// `N(ε) + F(ε)`, weakly equivalent to `-log P(‖X‖ <= ε)` for symmetric processes.
pub fn symmetric_rate<T: Real>(triplet: &LevyTriplet<T>, eps: T) -> Result<T, BoundsError> {
    if !triplet.is_structurally_symmetric() {
        return Err(BoundsError::NotSymmetric);
    }
    Ok(tail_mass(triplet.components(), eps)? + f_function(triplet, eps))
}

/// `(N(ε) + F(ε)) / (N(2ε) + F(2ε))`, which always lies in `[1, 4]`.
pub fn doubling_check<T: Real>(triplet: &LevyTriplet<T>, eps: T) -> Result<T, BoundsError> {
    let two = lit::<T>(2.0);
    let num = tail_mass(triplet.components(), eps)? + f_function(triplet, eps);
    let den = tail_mass(triplet.components(), two * eps)? + f_function(triplet, two * eps);
    if den == T::zero() {
        return Err(BoundsError::ZeroDenominator);
    }
    let ratio = num / den;
    let slack = lit::<T>(1e-9);
    if !(ratio >= T::one() - slack && ratio <= lit::<T>(4.0) + slack) {
        return Err(BoundsError::DoublingViolation(ratio.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(ratio)
}

/// `π²σ²/8 · ε^{-2}`, the strong rate of any process with a Gaussian part.
pub fn gaussian_rate<T: Real>(sigma2: T) -> Result<RateExpression<T>, BoundsError> {
    if !(sigma2 > T::zero()) {
        return Err(BoundsError::NoGaussianPart);
    }
    Ok(RateExpression::strong(lit(2.0), lit::<T>(PI * PI / 8.0) * sigma2, "Gaussian component present"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tightness<T> {
    pub tight: bool,
    /// `ε|u_ε| / (N + esscher_cost + F̄)`
    pub ratio: T,
    /// `threshold - ratio`
    pub margin: T,
}

pub fn tightness_check<T: Real>(report: &BoundReport<T>, threshold: T) -> Tightness<T> {
    let den = report.total();
    let ratio = if report.tilt_term == T::zero() {
        T::zero()
    } else if den == T::zero() {
        T::infinity()
    } else {
        report.tilt_term / den
    };
    Tightness { tight: ratio < threshold, ratio, margin: threshold - ratio }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InequalityCheck<T> {
    pub lhs: T,
    pub rhs: T,
    /// `rhs - lhs`; nonnegative when the inequality holds.
    pub slack: T,
}

impl<T: Real> InequalityCheck<T> {
    pub fn holds(&self) -> bool {
        self.slack >= T::zero()
    }
}

/// Which sufficient condition for a negligible tilt applied at this radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NegligibilityReport<T> {
    pub eps: T,
    /// `b_ε <= 0`: `(ε|u_ε|)² <= -2 (ε^{-2} ∫_0^ε x² ν)^{-1} Λ_ε(u_ε)`.
    pub case_a: Option<InequalityCheck<T>>,
    /// Finite variation, `c != 0`, `∫_{-ε}^{ε} |x| ν <= |c|/2`: `|c u_ε| <= -4 Λ_ε(u_ε)`.
    pub case_b: Option<InequalityCheck<T>>,
}

pub fn negligibility_check<T: Real>(triplet: &LevyTriplet<T>, eps: T) -> Result<NegligibilityReport<T>, BoundsError> {
    let sol = match solve_esscher(triplet, eps)? {
        crate::esscher::EsscherOutcome::Root(s) => s,
        crate::esscher::EsscherOutcome::NoRoot { reason } => return Err(BoundsError::NoRoot(reason)),
    };
    let lam = sol.lambda_at_root;
    let tilt = eps * sol.u_eps.abs();

    let case_a = (sol.b_eps <= T::zero()).then(|| {
        let m2 = abs_moment(triplet.components(), eps, lit(2.0), Some(Side::Positive)).to_real();
        let lhs = tilt * tilt;
        let rhs = if lam == T::zero() { T::zero() } else { lit::<T>(-2.0) * eps * eps * lam / m2 };
        InequalityCheck { lhs, rhs, slack: rhs - lhs }
    });

    let case_b = if triplet.sigma2() == T::zero() {
        effective_drift(triplet).and_then(|c| {
            if c.is_zero() {
                return None;
            }
            let m1 = abs_moment(triplet.components(), eps, T::one(), None).finite()?;
            (m1 <= c.value.abs() / lit(2.0)).then(|| {
                let lhs = (c.value * sol.u_eps).abs();
                let rhs = lit::<T>(-4.0) * lam;
                InequalityCheck { lhs, rhs, slack: rhs - lhs }
            })
        })
    } else {
        None
    };
    Ok(NegligibilityReport { eps, case_a, case_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{MeasureComponent, TemperedPowerLaw};

    fn sym_atoms(loc: f64, mass: f64) -> LevyTriplet<f64> {
        LevyTriplet::new(vec![MeasureComponent::atom(loc, mass), MeasureComponent::atom(-loc, mass)], 0.0, 0.0)
    }

    #[test]
    fn gaussian_plug_in() {
        let r = theorem15(&LevyTriplet::<f64>::gaussian(1.0, 0.0), 0.5).unwrap();
        assert_eq!(r.tail_cost, 0.0);
        assert_eq!(r.esscher_cost, 0.0);
        assert!((r.oscillation_cost - 4.0).abs() < 1e-14);
        assert!((r.upper_exponent - 43.0).abs() < 1e-12);
        assert!((r.lower_exponent_raw + 2.0 / 3.0).abs() < 1e-14);
        assert_eq!(r.lower_exponent, 0.0);
    }

    #[test]
    fn symmetric_atoms_plug_in() {
        let r = theorem15(&sym_atoms(1.0, 1.0), 0.3).unwrap();
        assert_eq!(r.upper_exponent, 5.0);
        assert_eq!(r.lower_exponent, 1.0);
        assert_eq!(r.u_eps, 0.0);
        assert!(r.tight);
        assert_eq!(r.dominant, Dominant::Tail);
    }

    #[test]
    fn martingale_examples() {
        let m = martingale_bounds(&LevyTriplet::<f64>::gaussian(1.0, 0.0), 1.0).unwrap();
        assert_eq!((m.f, m.lower_prob_exponent), (1.0, 13.0));
        assert!((m.upper_prob_exponent + 11.0 / 12.0).abs() < 1e-15);
        let m = martingale_bounds(&sym_atoms(0.5, 2.0), 0.5).unwrap();
        assert!((m.f - 4.0).abs() < 1e-14);
        assert!(martingale_bounds(&LevyTriplet::<f64>::gaussian(1.0, 1.0), 1.0).is_err());
    }

    #[test]
    fn doubling_examples() {
        assert!((doubling_check(&LevyTriplet::<f64>::gaussian(1.0, 0.0), 0.1).unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(doubling_check(&sym_atoms(1.0, 1.0), 0.4).unwrap(), 1.0);
        assert!(matches!(
            doubling_check(&LevyTriplet::<f64>::gaussian(0.0, 0.0), 0.1),
            Err(BoundsError::ZeroDenominator)
        ));
    }

    #[test]
    fn gaussian_rate_constant() {
        let r = gaussian_rate(4.0).unwrap();
        assert!((r.constant.unwrap() - PI * PI / 2.0).abs() < 1e-14);
        assert!(gaussian_rate(0.0).is_err());
    }

    #[test]
    fn negligibility_on_stable_sub_with_drift() {
        let p = TemperedPowerLaw::new(1.0, 0.5, Side::Positive).with_cutoff(f64::INFINITY);
        let t = LevyTriplet::with_effective_drift(vec![MeasureComponent::PowerLaw(p)], 0.0, -1.0);
        let r = negligibility_check(&t, 0.01).unwrap();
        assert!(r.case_a.unwrap().holds());
        assert!(r.case_b.unwrap().holds());
        let sym = negligibility_check(&sym_atoms(1.0, 1.0), 0.3).unwrap();
        assert_eq!(sym.case_a.unwrap().slack, 0.0);
    }
}
