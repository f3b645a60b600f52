//! Structural properties of a triplet: type (I), effective drift, subordinator
//! status and the small deviation property.

use serde::Serialize;

use crate::measure::{abs_moment, first_moment_band};
use crate::model::{LevyTriplet, MeasureComponent, Side};
use crate::real::Real;

/// Why a triplet has (or lacks) the small deviation property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SdpReason {
    /// Infinite variation or a Gaussian part: always has the property.
    NotTypeI,
    /// Finite variation with zero effective drift.
    CZero,
    /// Positive effective drift, compensated by negative jumps of every size near 0.
    CPosWithNegJumps,
    /// Negative effective drift, compensated by positive jumps of every size near 0.
    CNegWithPosJumps,
    /// Drift pushes the path out and no small jumps can pull it back.
    FailsProp11,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EffectiveDrift<T> {
    pub value: T,
    pub err: T,
    /// Zero by construction (declared, or symmetric measure with `b = 0`).
    pub structural_zero: bool,
}

impl<T: Real> EffectiveDrift<T> {
    pub fn is_zero(&self) -> bool {
        self.structural_zero || self.value == T::zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Classification<T> {
    pub is_type_i: bool,
    pub effective_drift: Option<EffectiveDrift<T>>,
    pub is_subordinator: bool,
    pub is_neg_subordinator: bool,
    pub has_sdp: bool,
    pub sdp_reason: SdpReason,
    pub is_compound_poisson: bool,
}

/// Effective drift `c = b - ∫_{|x|<=1} x ν(dx)`, defined for finite first moment.
pub fn effective_drift<T: Real>(t: &LevyTriplet<T>) -> Option<EffectiveDrift<T>> {
    if let Some(c) = t.declared_effective_drift() {
        return Some(EffectiveDrift { value: c, err: T::zero(), structural_zero: c == T::zero() });
    }
    if !abs_moment(t.components(), T::one(), T::one(), None).is_finite() {
        return None;
    }
    if t.b() == T::zero() && t.measure_is_symmetric() {
        return Some(EffectiveDrift { value: T::zero(), err: T::zero(), structural_zero: true });
    }
    let m = first_moment_band(t.components(), T::zero(), T::one());
    let value = t.b() - m.value;
    Some(EffectiveDrift {
        value,
        err: m.abs_err + T::epsilon() * (t.b().abs() + m.value.abs()),
        structural_zero: false,
    })
}

fn charges_near_zero<T: Real>(comps: &[MeasureComponent<T>], side: Side) -> bool {
    comps.iter().any(|c| c.charges_near_zero(side))
}

fn charges_side<T: Real>(comps: &[MeasureComponent<T>], side: Side) -> bool {
    comps.iter().any(|c| c.charges_side(side))
}

pub fn classify<T: Real>(t: &LevyTriplet<T>) -> Classification<T> {
    let comps = t.components();
    let drift = effective_drift(t);
    let is_type_i = t.sigma2() == T::zero() && drift.is_some();
    let effective_drift = if is_type_i { drift } else { None };

    let pos = charges_side(comps, Side::Positive);
    let neg = charges_side(comps, Side::Negative);
    let c_sign = effective_drift.map(|d| if d.is_zero() { 0 } else if d.value > T::zero() { 1 } else { -1 });

    let is_subordinator = is_type_i && !neg && c_sign.is_some_and(|s| s >= 0);
    let is_neg_subordinator = is_type_i && !pos && c_sign.is_some_and(|s| s <= 0);

    let (has_sdp, sdp_reason) = match c_sign {
        _ if !is_type_i => (true, SdpReason::NotTypeI),
        Some(0) => (true, SdpReason::CZero),
        Some(1) if charges_near_zero(comps, Side::Negative) => (true, SdpReason::CPosWithNegJumps),
        Some(-1) if charges_near_zero(comps, Side::Positive) => (true, SdpReason::CNegWithPosJumps),
        _ => (false, SdpReason::FailsProp11),
    };

    let is_compound_poisson = t.sigma2() == T::zero() && comps.iter().all(MeasureComponent::is_finite_mass);

    Classification {
        is_type_i,
        effective_drift,
        is_subordinator,
        is_neg_subordinator,
        has_sdp,
        sdp_reason,
        is_compound_poisson,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TemperedPowerLaw;

    fn stable_sub(mu: f64) -> LevyTriplet<f64> {
        let p = TemperedPowerLaw::new(1.0, 0.5, Side::Positive).with_cutoff(f64::INFINITY);
        LevyTriplet::with_effective_drift(vec![MeasureComponent::PowerLaw(p)], 0.0, mu)
    }

    #[test]
    fn stable_subordinator_drift_signs() {
        let pos = classify(&stable_sub(1.0));
        assert!(!pos.has_sdp);
        assert_eq!(pos.sdp_reason, SdpReason::FailsProp11);
        assert!(pos.is_subordinator);

        let zero = classify(&stable_sub(0.0));
        assert!(zero.is_subordinator && zero.has_sdp);
        assert_eq!(zero.sdp_reason, SdpReason::CZero);

        let neg = classify(&stable_sub(-1.0));
        assert!(neg.has_sdp && !neg.is_subordinator);
        assert_eq!(neg.sdp_reason, SdpReason::CNegWithPosJumps);
    }

    #[test]
    fn infinite_variation_not_type_i() {
        let t = LevyTriplet::new(
            vec![
                MeasureComponent::power_law(1.0, 1.5, Side::Positive),
                MeasureComponent::power_law(1.0, 1.5, Side::Negative),
            ],
            0.0,
            0.0,
        );
        let c = classify(&t);
        assert!(!c.is_type_i && c.has_sdp);
        assert_eq!(c.sdp_reason, SdpReason::NotTypeI);
        assert!(c.effective_drift.is_none());
    }

    #[test]
    fn atoms_cannot_compensate_drift() {
        // c = 0.5 > 0 but the negative jump sits at -1, away from 0
        let t = LevyTriplet::with_effective_drift(vec![MeasureComponent::atom(-1.0, 1.0)], 0.0, 0.5);
        let c = classify(&t);
        assert!(!c.has_sdp);
        assert!(c.is_compound_poisson);
    }

    #[test]
    fn reflection_swaps_subordinator_flags() {
        let t = stable_sub(0.0);
        let a = classify(&t);
        let b = classify(&t.reflect());
        assert_eq!(a.is_subordinator, b.is_neg_subordinator);
        assert_eq!(a.has_sdp, b.has_sdp);
    }

    #[test]
    fn symmetric_measure_structural_zero() {
        let t = LevyTriplet::new(vec![MeasureComponent::atom(1.0, 1.0), MeasureComponent::atom(-1.0, 1.0)], 0.0, 0.0);
        let c = classify(&t);
        assert!(c.effective_drift.unwrap().structural_zero);
        assert!(c.has_sdp && c.is_compound_poisson);
    }
}
