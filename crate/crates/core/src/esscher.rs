//! The truncated log-moment generating function `Λ_ε`, its derivatives, and the
//! Esscher root `Λ'_ε(u_ε) = 0`.

use serde::Serialize;
use thiserror::Error;

use crate::classify::effective_drift;
use crate::measure::{tilted_integral, truncated_drift, MeasureError, TiltedIntegralRequest, Variant};
use crate::model::{LevyTriplet, MeasureComponent, Side};
use crate::real::{lit, Real};
use crate::roots::{newton_bisect, RootError, RootOptions};

/// `Λ_ε` for one triplet and radius, with `b_ε` computed once.
#[derive(Clone, Debug)]
pub struct TruncatedExponent<T> {
    pub eps: T,
    pub sigma2: T,
    pub b_eps: T,
    components: Vec<MeasureComponent<T>>,
}

impl<T: Real> TruncatedExponent<T> {
    pub fn new(triplet: &LevyTriplet<T>, eps: T) -> Self {
        let components = triplet.components().iter().filter_map(|c| c.restricted(eps)).collect();
        Self { eps, sigma2: triplet.sigma2(), b_eps: truncated_drift(triplet, eps).value, components }
    }

    pub fn components(&self) -> &[MeasureComponent<T>] {
        &self.components
    }

    fn integral(&self, u: T, variant: Variant) -> Result<T, MeasureError> {
        let req = TiltedIntegralRequest { eps: self.eps, u, variant };
        Ok(tilted_integral(&self.components, &req)?.value)
    }

    /// `½σ²u² + b_ε u + ∫_{-ε}^{ε} (e^{ux} - 1 - ux) ν(dx)`.
    pub fn value(&self, u: T) -> Result<T, MeasureError> {
        let half = lit::<T>(0.5);
        Ok(half * self.sigma2 * u * u + self.b_eps * u + self.integral(u, Variant::Compensated2)?)
    }

    /// `σ²u + b_ε + ∫ (e^{ux} - 1) x ν(dx)`.
    pub fn d1(&self, u: T) -> Result<T, MeasureError> {
        Ok(self.sigma2 * u + self.b_eps + self.integral(u, Variant::Compensated1x)?)
    }

    /// `σ² + ∫ x² e^{ux} ν(dx)`.
    pub fn d2(&self, u: T) -> Result<T, MeasureError> {
        Ok(self.sigma2 + self.integral(u, Variant::Moment2Tilted)?)
    }

    fn charges(&self, side: Side) -> bool {
        self.components.iter().any(|c| c.charges_side(side))
    }
}

/// `Λ_ε(u)`.
pub fn lambda_eps<T: Real>(triplet: &LevyTriplet<T>, eps: T, u: T) -> Result<T, MeasureError> {
    TruncatedExponent::new(triplet, eps).value(u)
}

/// First or second derivative of `Λ_ε` at `u` (`order` is 1 or 2).
pub fn lambda_eps_deriv<T: Real>(triplet: &LevyTriplet<T>, eps: T, u: T, order: u8) -> Result<T, MeasureError> {
    let l = TruncatedExponent::new(triplet, eps);
    match order {
        1 => l.d1(u),
        2 => l.d2(u),
        _ => panic!("derivative order must be 1 or 2, got {order}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EsscherSolution<T> {
    pub eps: T,
    pub u_eps: T,
    pub lambda_at_root: T,
    pub lambda2_at_root: T,
    /// `ε^{-2} Λ''_ε(u_ε)`
    pub fbar: T,
    pub b_eps: T,
    /// `|Λ'_ε(u_ε)|`
    pub residual: T,
    pub iterations: usize,
}

/// Why `Λ'_ε` has no zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoRootReason {
    /// Only positive small jumps and `Λ'_ε(-∞) = c >= 0`: `|X|` is (locally) a subordinator.
    Subordinator,
    /// Mirror case with only negative small jumps.
    NegSubordinator,
    /// No small jumps, no Gaussian part and a nonzero drift.
    NoSdp,
}

impl NoRootReason {
    pub fn explain(self) -> &'static str {
        match self {
            NoRootReason::Subordinator => {
                "only positive jumps below eps and nonnegative effective drift: Λ'_ε stays positive, \
                 use the subordinator (Tauberian) rate instead"
            }
            NoRootReason::NegSubordinator => {
                "only negative jumps below eps and nonpositive effective drift: Λ'_ε stays negative, \
                 the reflected process is a subordinator"
            }
            NoRootReason::NoSdp => {
                "no jumps below eps and no Gaussian part to compensate the drift: \
                 the process lacks the small deviation property"
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EsscherOutcome<T> {
    Root(EsscherSolution<T>),
    NoRoot { reason: NoRootReason },
}

impl<T: Real> EsscherOutcome<T> {
    pub fn root(self) -> Option<EsscherSolution<T>> {
        match self {
            EsscherOutcome::Root(s) => Some(s),
            EsscherOutcome::NoRoot { .. } => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EsscherError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("root bracket not found after {0} doublings")]
    BracketFailure(usize),
    #[error("root refinement failed: {0}")]
    Refinement(#[from] RootError),
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions<T> {
    /// Residual tolerance; defaults to `1e-10 (1 + |b_ε|)`.
    pub tol: Option<T>,
    /// Where the bracket search starts (default 0, where `Λ'_ε(0) = b_ε`).
    pub start: T,
    /// First bracket step; defaults to `1/ε`.
    pub initial_step: Option<T>,
    pub max_bisections: usize,
}

impl<T: Real> Default for SolveOptions<T> {
    fn default() -> Self {
        Self { tol: None, start: T::zero(), initial_step: None, max_bisections: 10_000 }
    }
}

/// Solves `Λ'_ε(u) = 0` with default options.
pub fn solve_esscher<T: Real>(triplet: &LevyTriplet<T>, eps: T) -> Result<EsscherOutcome<T>, EsscherError> {
    solve_esscher_with(triplet, eps, &SolveOptions::default())
}

pub fn solve_esscher_with<T: Real>(
    triplet: &LevyTriplet<T>,
    eps: T,
    opts: &SolveOptions<T>,
) -> Result<EsscherOutcome<T>, EsscherError> {
    if !(eps > T::zero()) || !eps.is_finite() {
        return Err(EsscherError::InvalidRadius(eps.to_f64().unwrap_or(f64::NAN)));
    }
    let lam = TruncatedExponent::new(triplet, eps);
    let b_eps = lam.b_eps;
    let tol = opts.tol.unwrap_or_else(|| lit::<T>(1e-10) * (T::one() + b_eps.abs()));

    // Limits of the increasing function Λ' at ±∞ decide existence.
    if lam.sigma2 == T::zero() {
        let pos = lam.charges(Side::Positive);
        let neg = lam.charges(Side::Negative);
        // With only one side charged, the finite limit is the effective drift c.
        let c = || effective_drift(triplet);
        match (pos, neg) {
            (true, false) => {
                if let Some(c) = c() {
                    if c.is_zero() || c.value > T::zero() {
                        return Ok(EsscherOutcome::NoRoot { reason: NoRootReason::Subordinator });
                    }
                }
            }
            (false, true) => {
                if let Some(c) = c() {
                    if c.is_zero() || c.value < T::zero() {
                        return Ok(EsscherOutcome::NoRoot { reason: NoRootReason::NegSubordinator });
                    }
                }
            }
            (false, false) => {
                let zero_drift = b_eps == T::zero() || c().is_some_and(|c| c.is_zero());
                if !zero_drift {
                    return Ok(EsscherOutcome::NoRoot { reason: NoRootReason::NoSdp });
                }
                return Ok(EsscherOutcome::Root(finish(&lam, T::zero(), 0)?));
            }
            (true, true) => {}
        }
    }

    let u0 = opts.start;
    let f0 = lam.d1(u0)?;
    if f0.abs() <= tol {
        return Ok(EsscherOutcome::Root(finish(&lam, u0, 0)?));
    }
    // Expand geometrically away from u0 until Λ' changes sign.
    let dir = if f0 < T::zero() { T::one() } else { -T::one() };
    let mut step = opts.initial_step.unwrap_or_else(|| eps.recip());
    let mut inner = u0;
    let mut outer = u0 + dir * step;
    let mut doublings = 0usize;
    loop {
        let f = lam.d1(outer)?;
        if f.is_nan() {
            return Err(EsscherError::BracketFailure(doublings));
        }
        if f.abs() <= tol {
            return Ok(EsscherOutcome::Root(finish(&lam, outer, doublings)?));
        }
        if (f > T::zero()) == (dir > T::zero()) {
            break;
        }
        inner = outer;
        step = step * lit(2.0);
        outer = u0 + dir * step;
        doublings += 1;
        if doublings > 2_000 || !outer.is_finite() {
            return Err(EsscherError::BracketFailure(doublings));
        }
    }
    let (lo, hi) = if dir > T::zero() { (inner, outer) } else { (outer, inner) };

    let mut fail = None;
    let root = newton_bisect(
        |u| match (lam.d1(u), lam.d2(u)) {
            (Ok(f), Ok(df)) => (f, df),
            (Err(e), _) | (_, Err(e)) => {
                fail = Some(e);
                (T::nan(), T::nan())
            }
        },
        lo,
        hi,
        &RootOptions { f_tol: tol, max_bisections: opts.max_bisections, max_iterations: 4 * opts.max_bisections },
    );
    if let Some(e) = fail {
        return Err(e.into());
    }
    let root = root?;
    Ok(EsscherOutcome::Root(finish(&lam, root.x, doublings + root.iterations)?))
}

fn finish<T: Real>(lam: &TruncatedExponent<T>, u: T, iterations: usize) -> Result<EsscherSolution<T>, MeasureError> {
    let value = lam.value(u)?;
    let d2 = lam.d2(u)?;
    Ok(EsscherSolution {
        eps: lam.eps,
        u_eps: u,
        lambda_at_root: value,
        lambda2_at_root: d2,
        fbar: d2 / (lam.eps * lam.eps),
        b_eps: lam.b_eps,
        residual: lam.d1(u)?.abs(),
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TemperedPowerLaw;

    #[test]
    fn gaussian_root() {
        let t = LevyTriplet::<f64>::gaussian(1.0, 2.0);
        assert_eq!(lambda_eps(&t, 0.3, 0.0).unwrap(), 0.0);
        assert!((lambda_eps(&t, 0.3, 1.5).unwrap() - (1.125 + 3.0)).abs() < 1e-14);
        assert_eq!(lambda_eps_deriv(&t, 0.3, -2.0, 1).unwrap(), 0.0);
        let s = solve_esscher(&t, 0.1).unwrap().root().unwrap();
        assert!((s.u_eps + 2.0).abs() < 1e-12);
        assert!((s.lambda_at_root + 2.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_atoms_lambda() {
        let t = LevyTriplet::new(vec![MeasureComponent::atom(0.1, 1.0), MeasureComponent::atom(-0.1, 1.0)], 0.0, 0.0);
        let v = lambda_eps(&t, 0.5, 1.0).unwrap();
        assert!((v - 2.0 * (0.1f64.cosh() - 1.0)).abs() < 1e-15);
        let s = solve_esscher(&t, 0.5).unwrap().root().unwrap();
        assert_eq!(s.u_eps, 0.0);
        assert_eq!(s.lambda_at_root, 0.0);
    }

    #[test]
    fn subordinator_has_no_root() {
        let p = TemperedPowerLaw::new(1.0, 0.5, Side::Positive).with_cutoff(f64::INFINITY);
        let t = LevyTriplet::with_effective_drift(vec![MeasureComponent::PowerLaw(p)], 0.0, 0.0);
        assert_eq!(solve_esscher(&t, 0.01).unwrap(), EsscherOutcome::NoRoot { reason: NoRootReason::Subordinator });
        assert_eq!(
            solve_esscher(&t.reflect(), 0.01).unwrap(),
            EsscherOutcome::NoRoot { reason: NoRootReason::NegSubordinator }
        );
    }

    #[test]
    fn stable_sub_negative_drift_root() {
        let p = TemperedPowerLaw::new(1.0, 0.5, Side::Positive).with_cutoff(f64::INFINITY);
        let t = LevyTriplet::with_effective_drift(vec![MeasureComponent::PowerLaw(p)], 0.0, -1.0);
        for eps in [1e-1, 1e-2, 1e-3, 1e-4] {
            let s = solve_esscher(&t, eps).unwrap().root().unwrap();
            assert!(s.residual <= 1e-10 * (1.0 + s.b_eps.abs()), "eps={eps} {s:?}");
            assert!(s.u_eps > 0.0 && s.lambda_at_root < 0.0);
        }
    }

    #[test]
    fn pure_drift_without_jumps() {
        let t = LevyTriplet::new(vec![MeasureComponent::atom(1.0, 1.0)], 0.0, 0.0);
        // b_ε = -1 at eps = 0.5, nothing below eps
        assert_eq!(solve_esscher(&t, 0.5).unwrap(), EsscherOutcome::NoRoot { reason: NoRootReason::NoSdp });
    }
}
