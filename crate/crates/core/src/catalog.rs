//! Closed-form rates for named families and the special-purpose bounds that go
//! with them.

use serde::Serialize;
use thiserror::Error;

use crate::classify::classify;
use crate::measure::{abs_moment, laplace_exponent, tail_mass, Extended, MeasureError};
use crate::model::{LevyTriplet, MeasureComponent, RateExpression, Side, TemperedPowerLaw};
use crate::real::{lit, Real};
use crate::special::{gamma, regularized_lower_gamma};

/// Drift of a family, either under the `1_{|x|<=1}` compensation or as effective drift `c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyDrift<T> {
    Compensated(T),
    Effective(T),
}

impl<T: Real> FamilyDrift<T> {
    fn negate(self) -> Self {
        match self {
            FamilyDrift::Compensated(b) => FamilyDrift::Compensated(-b),
            FamilyDrift::Effective(c) => FamilyDrift::Effective(-c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum NamedFamily<T> {
    /// `x^{-1-α} dx` on `(0, ∞)` plus drift `μ` (effective drift).
    StableSubordinatorDrift { alpha: T, mu: T },
    /// `b e^{-x/a} / x dx` on `(0, ∞)` plus drift `μ`.
    GammaDrift { a: T, b: T, mu: T },
    /// `C1 x^{-1-α1}` on `(0, 1]` and `C2 |x|^{-1-α2}` on `[-1, 0)`.
    PolynomialMeasure { alpha1: T, alpha2: T, c1: T, c2: T, drift: FamilyDrift<T> },
    /// `C1 e^{-λ1 x}/x` on `x > 0`, `C2 e^{-λ2|x|}/|x|` on `x < 0`, with `b = 0`; asymmetry makes the effective drift nonzero.
    VarianceGamma { c1: T, c2: T, lambda1: T, lambda2: T },
    /// Brownian motion run by a subordinator with `Φ(u) = u^γ` and drift `b_A`.
    SubordinatedBm { gamma: T, b_a: T },
    /// Finite measure with zero effective drift.
    CompoundPoissonNoDrift { total_mass: T },
    /// Symmetric strictly `α`-stable process.
    StrictlyStable { alpha: T },
}

/// Outcome of the rate lookup.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CatalogRate<T> {
    Rate(RateExpression<T>),
    /// `P(‖X‖ <= ε)` decays polynomially, `-log P ~ exponent · |log ε|`.
    PolynomialProbability { exponent: T, regime: String },
    /// The process lacks the small deviation property.
    NoSdp { reason: String },
    Unsupported { reason: String },
}

impl<T: Real> CatalogRate<T> {
    pub fn rate(&self) -> Option<&RateExpression<T>> {
        match self {
            CatalogRate::Rate(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

fn weak<T: Real>(p: f64, q: f64, r: f64, regime: &str) -> CatalogRate<T> {
    CatalogRate::Rate(RateExpression::weak(lit(p), lit(q), lit(r), regime))
}

fn check(cond: bool, msg: &str) -> Result<(), CatalogError> {
    if cond {
        Ok(())
    } else {
        Err(CatalogError::InvalidParameter(msg.to_string()))
    }
}

impl<T: Real> NamedFamily<T> {
    pub fn validate(&self) -> Result<(), CatalogError> {
        let zero = T::zero();
        let one = T::one();
        let two = lit::<T>(2.0);
        match *self {
            NamedFamily::StableSubordinatorDrift { alpha, mu } => {
                check(alpha > zero && alpha < one, "stable subordinator needs alpha in (0, 1)")?;
                check(mu.is_finite(), "mu must be finite")
            }
            NamedFamily::GammaDrift { a, b, mu } => {
                check(a > zero && b > zero, "gamma process needs a, b > 0")?;
                check(mu.is_finite(), "mu must be finite")
            }
            NamedFamily::PolynomialMeasure { alpha1, alpha2, c1, c2, .. } => {
                check(alpha1 < two && alpha2 < two, "alpha1, alpha2 must be < 2")?;
                check(c1 >= zero && c2 >= zero && c1 + c2 > zero, "C1, C2 >= 0 with C1 + C2 > 0")
            }
            NamedFamily::VarianceGamma { c1, c2, lambda1, lambda2 } => {
                check(c1 > zero && c2 > zero && lambda1 > zero && lambda2 > zero, "variance gamma parameters must be > 0")
            }
            NamedFamily::SubordinatedBm { gamma, b_a } => {
                check(gamma > zero && gamma <= one, "gamma must lie in (0, 1]")?;
                check(b_a >= zero, "b_A must be >= 0")
            }
            NamedFamily::CompoundPoissonNoDrift { total_mass } => check(total_mass > zero, "total mass must be > 0"),
            NamedFamily::StrictlyStable { alpha } => check(alpha > zero && alpha < two, "alpha must lie in (0, 2)"),
        }
    }

    /// Polynomial measures normalized so that `α1 > α2`, or `α1 = α2` and `C1 >= C2`.
    pub fn normalized(&self) -> Self {
        match *self {
            NamedFamily::PolynomialMeasure { alpha1, alpha2, c1, c2, drift }
                if alpha2 > alpha1 || (alpha1 == alpha2 && c2 > c1) =>
            {
                NamedFamily::PolynomialMeasure { alpha1: alpha2, alpha2: alpha1, c1: c2, c2: c1, drift: drift.negate() }
            }
            other => other,
        }
    }

    /// A triplet realizing the family.
    pub fn to_triplet(&self) -> Result<LevyTriplet<T>, CatalogError> {
        self.validate()?;
        let inf = T::infinity();
        Ok(match *self {
            NamedFamily::StableSubordinatorDrift { alpha, mu } => {
                let p = TemperedPowerLaw::new(T::one(), alpha, Side::Positive).with_cutoff(inf);
                LevyTriplet::with_effective_drift(vec![MeasureComponent::PowerLaw(p)], T::zero(), mu)
            }
            NamedFamily::GammaDrift { a, b, mu } => {
                let p = TemperedPowerLaw::tempered(b, T::zero(), a.recip(), Side::Positive);
                LevyTriplet::with_effective_drift(vec![MeasureComponent::PowerLaw(p)], T::zero(), mu)
            }
            NamedFamily::PolynomialMeasure { alpha1, alpha2, c1, c2, drift } => {
                let comps = vec![
                    MeasureComponent::power_law(c1, alpha1, Side::Positive),
                    MeasureComponent::power_law(c2, alpha2, Side::Negative),
                ];
                match drift {
                    FamilyDrift::Compensated(b) => LevyTriplet::new(comps, T::zero(), b),
                    FamilyDrift::Effective(c) => LevyTriplet::with_effective_drift(comps, T::zero(), c),
                }
            }
            NamedFamily::VarianceGamma { c1, c2, lambda1, lambda2 } => LevyTriplet::new(
                vec![
                    MeasureComponent::PowerLaw(TemperedPowerLaw::tempered(c1, T::zero(), lambda1, Side::Positive)),
                    MeasureComponent::PowerLaw(TemperedPowerLaw::tempered(c2, T::zero(), lambda2, Side::Negative)),
                ],
                T::zero(),
                T::zero(),
            ),
            NamedFamily::SubordinatedBm { gamma: g, b_a } => {
                if g == T::one() {
                    return Ok(LevyTriplet::gaussian(T::one() + b_a, T::zero()));
                }
                // ν_A = γ/Γ(1-γ) s^{-1-γ} ds gives Φ(u) = u^γ; mixing N(0, s) over ν_A
                // yields the symmetric density C |x|^{-1-2γ}.
                let half = lit::<T>(0.5);
                let c_a = g / gamma(T::one() - g);
                let c = c_a * (g * lit::<T>(2.0).ln()).exp() * gamma(g + half) / T::PI().sqrt();
                let alpha = lit::<T>(2.0) * g;
                let pos = TemperedPowerLaw::new(c, alpha, Side::Positive).with_cutoff(inf);
                LevyTriplet::new(
                    vec![MeasureComponent::PowerLaw(pos), MeasureComponent::PowerLaw(TemperedPowerLaw { side: Side::Negative, ..pos })],
                    b_a,
                    T::zero(),
                )
            }
            NamedFamily::CompoundPoissonNoDrift { total_mass } => {
                let half = total_mass / lit(2.0);
                LevyTriplet::with_effective_drift(
                    vec![MeasureComponent::atom(T::one(), half), MeasureComponent::atom(-T::one(), half)],
                    T::zero(),
                    T::zero(),
                )
            }
            NamedFamily::StrictlyStable { alpha } => {
                let pos = TemperedPowerLaw::new(T::one(), alpha, Side::Positive).with_cutoff(inf);
                LevyTriplet::new(
                    vec![MeasureComponent::PowerLaw(pos), MeasureComponent::PowerLaw(TemperedPowerLaw { side: Side::Negative, ..pos })],
                    T::zero(),
                    T::zero(),
                )
            }
        })
    }
}

/// Effective drift of a normalized polynomial family; `None` when the first moment diverges.
fn polynomial_effective_drift<T: Real>(alpha1: T, alpha2: T, c1: T, c2: T, drift: FamilyDrift<T>) -> Option<T> {
    let one = T::one();
    let moment = |c: T, a: T| if c == T::zero() { Some(T::zero()) } else if a < one { Some(c / (one - a)) } else { None };
    match drift {
        FamilyDrift::Effective(c) => Some(c),
        FamilyDrift::Compensated(b) => Some(b - (moment(c1, alpha1)? - moment(c2, alpha2)?)),
    }
}

/// Regime dispatch for the named families.
pub fn asymptotic_rate<T: Real>(family: &NamedFamily<T>) -> Result<CatalogRate<T>, CatalogError> {
    family.validate()?;
    let zero = T::zero();
    let one = T::one();
    Ok(match family.normalized() {
        NamedFamily::StableSubordinatorDrift { alpha, mu } => {
            if mu > zero {
                CatalogRate::NoSdp { reason: "positive drift with only positive jumps".into() }
            } else if mu == zero {
                CatalogRate::Rate(RateExpression::weak(
                    alpha / (one - alpha),
                    zero,
                    zero,
                    "driftless stable subordinator (Tauberian index alpha/(1-alpha))",
                ))
            } else {
                weak(1.0, 1.0, 0.0, "stable subordinator with negative drift (Esscher term dominates)")
            }
        }
        NamedFamily::GammaDrift { b, mu, .. } => {
            if mu > zero {
                CatalogRate::NoSdp { reason: "positive drift with only positive jumps".into() }
            } else if mu == zero {
                CatalogRate::PolynomialProbability {
                    exponent: b,
                    regime: "driftless gamma subordinator: P(X_1 <= eps) ~ eps^b / (a^b Gamma(b+1))".into(),
                }
            } else {
                weak(1.0, 1.0, 0.0, "gamma process with negative drift (Esscher term dominates)")
            }
        }
        NamedFamily::PolynomialMeasure { alpha1, alpha2, c1, c2, drift } => {
            if alpha1 > one {
                CatalogRate::Rate(RateExpression::weak(alpha1, zero, zero, "polynomial measure, maximal index above 1"))
            } else if alpha1 == one {
                if alpha2 < one || c1 > c2 {
                    weak(1.0, 1.0, 1.0, "polynomial measure, maximal index 1, asymmetric")
                } else {
                    weak(1.0, 0.0, 0.0, "polynomial measure, both indices 1 with equal weights")
                }
            } else {
                let c = polynomial_effective_drift(alpha1, alpha2, c1, c2, drift)
                    .expect("finite first moment when alpha1 < 1");
                if c != zero {
                    if alpha1 < zero {
                        CatalogRate::Unsupported {
                            reason: "finite measure with nonzero effective drift: use the Poisson-tail bound".into(),
                        }
                    } else {
                        weak(1.0, 1.0, 0.0, "polynomial measure, index below 1, nonzero effective drift")
                    }
                } else if alpha1 > zero {
                    CatalogRate::Rate(RateExpression::weak(
                        alpha1,
                        zero,
                        zero,
                        "polynomial measure, index below 1, zero effective drift",
                    ))
                } else if alpha1 == zero {
                    weak(0.0, 1.0, 0.0, "logarithmic mass near zero, zero effective drift")
                } else {
                    let mass = c1 / -alpha1 + if c2 > zero { c2 / -alpha2 } else { zero };
                    CatalogRate::Rate(RateExpression::strong(zero, mass, "compound Poisson with zero effective drift"))
                }
            }
        }
        NamedFamily::VarianceGamma { c1, c2, lambda1, lambda2 } => {
            if variance_gamma_drift(c1, c2, lambda1, lambda2) == zero {
                weak(0.0, 1.0, 0.0, "variance gamma without drift")
            } else {
                weak(1.0, 1.0, 0.0, "variance gamma with drift (Esscher term dominates)")
            }
        }
        NamedFamily::SubordinatedBm { gamma, b_a } => {
            if b_a > zero || gamma == one {
                let s2 = if gamma == one { one + b_a } else { b_a };
                CatalogRate::Rate(RateExpression::strong(
                    lit(2.0),
                    lit::<T>(std::f64::consts::PI.powi(2) / 8.0) * s2,
                    "subordinated Brownian motion with a drifting subordinator (Gaussian part)",
                ))
            } else {
                CatalogRate::Rate(RateExpression::weak(
                    lit::<T>(2.0) * gamma,
                    zero,
                    zero,
                    "Brownian motion subordinated by a stable subordinator: Phi(eps^-2)",
                ))
            }
        }
        NamedFamily::CompoundPoissonNoDrift { total_mass } => CatalogRate::Rate(RateExpression::strong(
            zero,
            total_mass,
            "compound Poisson with zero effective drift: P -> exp(-nu(R))",
        )),
        NamedFamily::StrictlyStable { alpha } => {
            CatalogRate::Rate(RateExpression::weak(alpha, zero, zero, "strictly stable, not one-sided"))
        }
    })
}

/// `ε^{-α/(1-α)}` for a driftless subordinator whose measure is a power law of index `α` near 0.
pub fn tauberian_subordinator_rate<T: Real>(triplet: &LevyTriplet<T>) -> Result<RateExpression<T>, CatalogError> {
    let cls = classify(triplet);
    if !cls.is_subordinator || !cls.effective_drift.is_some_and(|c| c.is_zero()) {
        return Err(CatalogError::InvalidParameter("needs a subordinator with zero effective drift".into()));
    }
    let mut index: Option<T> = None;
    for comp in triplet.components() {
        match comp {
            MeasureComponent::PowerLaw(p) if p.has_mass() => {
                index = Some(index.map_or(p.alpha, |i| i.max(p.alpha)));
            }
            MeasureComponent::PowerLaw(_) | MeasureComponent::Atom(_) => {}
            MeasureComponent::Numeric(_) => {
                return Err(CatalogError::Unsupported("numeric densities have no declared Laplace index".into()))
            }
        }
    }
    match index {
        Some(a) if a > T::zero() && a < T::one() => Ok(tauberian_rate_from_index(a)),
        _ => Err(CatalogError::Unsupported("Laplace exponent is not regularly varying with index in (0, 1)".into())),
    }
}

pub fn tauberian_rate_from_index<T: Real>(alpha: T) -> RateExpression<T> {
    RateExpression::weak(
        alpha / (T::one() - alpha),
        T::zero(),
        T::zero(),
        "driftless subordinator, regularly varying Laplace exponent",
    )
}

/// Chebyshev bound on `-log P(‖X‖ <= ε/2)` for a finite measure on `(0, ∞)` with
/// drift `-1 + ∫_0^1 x ν(dx)`: `(1/ε - 1)(log((1/ε - 1)/f) - 1) + f`, `f = ν(0, ε]`.
pub fn poisson_tail_bound<T: Real>(components: &[MeasureComponent<T>], eps: T) -> Result<Extended<T>, CatalogError> {
    if !(eps > T::zero() && eps < T::one()) {
        return Err(CatalogError::InvalidParameter("eps must lie in (0, 1)".into()));
    }
    if components.iter().any(|c| c.charges_side(Side::Negative)) {
        return Err(CatalogError::InvalidParameter("measure must live on (0, ∞)".into()));
    }
    let f = match abs_moment(components, eps, T::zero(), Some(Side::Positive)) {
        Extended::Finite(f) => f,
        Extended::Infinite => return Err(CatalogError::InvalidParameter("measure must be finite".into())),
    };
    Ok(poisson_tail_exponent(f, eps))
}

/// The bound as a function of `f = ν(0, ε]`.
pub fn poisson_tail_exponent<T: Real>(f: T, eps: T) -> Extended<T> {
    if f <= T::zero() {
        return Extended::Infinite;
    }
    let n = eps.recip() - T::one();
    Extended::Finite(n * ((n / f).ln() - T::one()) + f)
}

/// Effective drift `c = -∫_{|x|<=1} x ν(dx)` of the variance gamma triplet with `b = 0`;
/// it vanishes for the symmetric measure.
pub fn variance_gamma_drift<T: Real>(c1: T, c2: T, lambda1: T, lambda2: T) -> T {
    if c1 == c2 && lambda1 == lambda2 {
        return T::zero();
    }
    let side = |c: T, l: T| c * -(-l).exp_m1() / l;
    side(c2, lambda2) - side(c1, lambda1)
}

/// Exact `P(sup_{t<=1} |X_t| <= ε) = P(X_1 <= ε)` for the driftless gamma process.
pub fn gamma_exact<T: Real>(a: T, b: T, eps: T) -> T {
    regularized_lower_gamma(b, eps / a)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SubordinatedTerms<T> {
    /// `Φ(ε^{-2})`
    pub phi: T,
    /// `b_A {ε^{-2}(σ² + ∫_0^ε x² ν_A) + ν_A([-ε, ε]^c)}`
    pub drift_term: T,
    pub total: T,
}

/// Term-by-term value of the weak rate of Brownian motion run by the subordinator `(ν_A, b_A)`.
///
/// `sigma_a2` is the Gaussian variance attached to the braced term; it is 0 for a
/// pure subordinator.
pub fn subordinated_rate_terms<T: Real>(
    nu_a: &[MeasureComponent<T>],
    sigma_a2: T,
    b_a: T,
    eps: T,
) -> Result<SubordinatedTerms<T>, CatalogError> {
    if b_a < T::zero() {
        return Err(CatalogError::InvalidParameter("b_A must be >= 0".into()));
    }
    let phi = laplace_exponent(nu_a, b_a, (eps * eps).recip())?;
    let m2 = abs_moment(nu_a, eps, lit(2.0), Some(Side::Positive)).to_real();
    let drift_term = if b_a == T::zero() {
        T::zero()
    } else {
        b_a * ((sigma_a2 + m2) / (eps * eps) + tail_mass(nu_a, eps)?)
    };
    Ok(SubordinatedTerms { phi, drift_term, total: phi + drift_term })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headline_rates() {
        let r = asymptotic_rate(&NamedFamily::StableSubordinatorDrift { alpha: 0.5, mu: -1.0 }).unwrap();
        assert_eq!(r.rate().unwrap().to_string(), "eps^-1 * |log eps|");
        let r = asymptotic_rate(&NamedFamily::PolynomialMeasure {
            alpha1: 1.5,
            alpha2: 0.3,
            c1: 1.0,
            c2: 1.0,
            drift: FamilyDrift::Compensated(0.0),
        })
        .unwrap();
        assert_eq!(r.rate().unwrap().pow_eps, 1.5);
        let r = asymptotic_rate(&NamedFamily::SubordinatedBm { gamma: 0.4, b_a: 0.0 }).unwrap();
        assert!((r.rate().unwrap().pow_eps - 0.8f64).abs() < 1e-15);
    }

    #[test]
    fn polynomial_regimes() {
        let poly = |a1, a2, c1, c2, b| NamedFamily::PolynomialMeasure { alpha1: a1, alpha2: a2, c1, c2, drift: FamilyDrift::Compensated(b) };
        let show = |f: NamedFamily<f64>| asymptotic_rate(&f).unwrap().rate().unwrap().to_string();
        assert_eq!(show(poly(1.0, 0.5, 1.0, 1.0, 0.0)), "eps^-1 * |log eps| * loglog");
        assert_eq!(show(poly(1.0, 1.0, 1.0, 1.0, 0.0)), "eps^-1");
        assert_eq!(show(poly(0.5, 0.5, 1.0, 1.0, 0.0)), "eps^-0.5");
        assert_eq!(show(poly(0.5, 0.5, 1.0, 1.0, -1.0)), "eps^-1 * |log eps|");
        assert_eq!(show(poly(1.5, 1.5, 1.0, 1.0, 2.0)), "eps^-1.5");
        // reflection leaves the regime unchanged
        assert_eq!(show(poly(0.3, 1.5, 2.0, 1.0, 1.0)), show(poly(1.5, 0.3, 1.0, 2.0, -1.0)));
    }

    #[test]
    fn tauberian_index_arithmetic() {
        assert_eq!(tauberian_rate_from_index(0.5).pow_eps, 1.0);
        assert!((tauberian_rate_from_index(0.25f64).pow_eps - 1.0 / 3.0).abs() < 1e-15);
        assert!((tauberian_rate_from_index(2.0f64 / 3.0).pow_eps - 2.0).abs() < 1e-14);
        let t = NamedFamily::StableSubordinatorDrift { alpha: 0.5, mu: 0.0 }.to_triplet().unwrap();
        assert_eq!(tauberian_subordinator_rate(&t).unwrap().pow_eps, 1.0);
    }

    #[test]
    fn poisson_tail_examples() {
        let atom = vec![MeasureComponent::atom(0.5, 1.0)];
        assert_eq!(poisson_tail_bound(&atom, 0.1).unwrap(), Extended::Infinite);
        let uniform = vec![MeasureComponent::power_law(1.0, -1.0, Side::Positive)];
        let v = poisson_tail_bound(&uniform, 0.1).unwrap().to_real();
        assert!((v - (9.0 * (90f64.ln() - 1.0) + 0.1)).abs() < 1e-12);
    }

    #[test]
    fn gamma_exact_examples() {
        assert!((gamma_exact(1.0, 1.0, 0.1) - (1.0 - (-0.1f64).exp())).abs() < 1e-15);
        assert!((gamma_exact(1.0, 2.0, 0.1) - (1.0 - (-0.1f64).exp() * 1.1)).abs() < 1e-15);
        assert!((gamma_exact(1.0f64, 1.0, 1e-8) / 1e-8 - 1.0).abs() < 1e-7);
    }

    #[test]
    fn subordinated_terms() {
        let t = subordinated_rate_terms::<f64>(&[], 0.0, 1.0, 0.1).unwrap();
        assert!((t.total - 100.0).abs() < 1e-12);
        // gamma subordinator: Φ(u) = b log(1 + a u)
        let g = vec![MeasureComponent::PowerLaw(TemperedPowerLaw::tempered(1.0, 0.0, 1.0, Side::Positive))];
        let t = subordinated_rate_terms(&g, 0.0, 0.0, 0.01).unwrap();
        assert!((t.phi - (1.0f64 + 1e4).ln()).abs() < 1e-12);
    }

    #[test]
    fn subordinated_bm_triplet_matches_phi() {
        // symmetric measure: tail mass of X equals ∫ P(|N(0,s)| > ε) ν_A(ds); check the
        // density constant through F + N scaling instead: N(ε) ∝ ε^{-2γ}
        let t = NamedFamily::SubordinatedBm { gamma: 0.4, b_a: 0.0 }.to_triplet().unwrap();
        let n1 = tail_mass(t.components(), 0.01).unwrap();
        let n2 = tail_mass(t.components(), 0.02).unwrap();
        assert!((n1 / n2 - 2f64.powf(0.8)).abs() < 1e-12);
    }
}
