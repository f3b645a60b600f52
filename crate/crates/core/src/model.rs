//! Lévy triplets, their measure building blocks and symbolic rate expressions.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::real::{lit, Real};

/// Half-line a one-sided component lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Side::Positive => T::one(),
            Side::Negative => -T::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Side::Positive => Side::Negative,
            Side::Negative => Side::Positive,
        }
    }

    pub fn of<T: Real>(x: T) -> Self {
        if x < T::zero() {
            Side::Negative
        } else {
            Side::Positive
        }
    }
}

/// Density `c · e^{-lambda |x|} / |x|^{1+alpha}` on `0 < |x| <= cutoff` of one side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TemperedPowerLaw<T> {
    pub c: T,
    pub alpha: T,
    pub lambda: T,
    pub side: Side,
    /// Outer support radius, possibly infinite.
    pub cutoff: T,
}

impl<T: Real> TemperedPowerLaw<T> {
    /// Untempered power law on `(0, 1]` of the given side.
    pub fn new(c: T, alpha: T, side: Side) -> Self {
        Self { c, alpha, lambda: T::zero(), side, cutoff: T::one() }
    }

    pub fn tempered(c: T, alpha: T, lambda: T, side: Side) -> Self {
        Self { c, alpha, lambda, side, cutoff: T::infinity() }
    }

    pub fn with_cutoff(mut self, cutoff: T) -> Self {
        self.cutoff = cutoff;
        self
    }

    /// Density at `|x| = y` (for `0 < y <= cutoff`).
    pub fn density_abs(&self, y: T) -> T {
        if y <= T::zero() || y > self.cutoff {
            return T::zero();
        }
        self.c * (-self.lambda * y).exp() * y.powf(-T::one() - self.alpha)
    }

    pub fn has_mass(&self) -> bool {
        self.c > T::zero()
    }
}

/// Point mass `mass` at `location`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom<T> {
    pub location: T,
    pub mass: T,
}

pub type DensityFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A density supplied as a closure, integrated numerically.
///
/// `sing_exp = s` declares that `density(x) · |x|^{1+s}` stays bounded near 0.
/// Whether the measure charges every neighbourhood of `0+` / `0-` cannot be
/// decided numerically, so the caller declares it.
#[derive(Clone)]
pub struct NumericDensity<T> {
    pub density: DensityFn<T>,
    pub lo: T,
    pub hi: T,
    pub sing_exp: T,
    pub near_zero_pos: bool,
    pub near_zero_neg: bool,
}

impl<T: Real> NumericDensity<T> {
    pub fn new(density: impl Fn(T) -> T + Send + Sync + 'static, lo: T, hi: T, sing_exp: T) -> Self {
        Self {
            density: Arc::new(density),
            lo,
            hi,
            near_zero_pos: hi > T::zero(),
            near_zero_neg: lo < T::zero(),
            sing_exp,
        }
    }

    pub fn eval(&self, x: T) -> T {
        if x == T::zero() || x < self.lo || x > self.hi {
            T::zero()
        } else {
            (self.density)(x)
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for NumericDensity<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumericDensity")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("sing_exp", &self.sing_exp)
            .field("near_zero_pos", &self.near_zero_pos)
            .field("near_zero_neg", &self.near_zero_neg)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub enum MeasureComponent<T> {
    PowerLaw(TemperedPowerLaw<T>),
    Atom(Atom<T>),
    Numeric(NumericDensity<T>),
}

impl<T: Real> MeasureComponent<T> {
    pub fn power_law(c: T, alpha: T, side: Side) -> Self {
        MeasureComponent::PowerLaw(TemperedPowerLaw::new(c, alpha, side))
    }

    pub fn atom(location: T, mass: T) -> Self {
        MeasureComponent::Atom(Atom { location, mass })
    }

    /// Mirror image under `x -> -x`.
    pub fn reflect(&self) -> Self {
        match self {
            MeasureComponent::PowerLaw(p) => MeasureComponent::PowerLaw(TemperedPowerLaw { side: p.side.flip(), ..*p }),
            MeasureComponent::Atom(a) => MeasureComponent::Atom(Atom { location: -a.location, mass: a.mass }),
            MeasureComponent::Numeric(n) => {
                let inner = n.density.clone();
                MeasureComponent::Numeric(NumericDensity {
                    density: Arc::new(move |x: T| inner(-x)),
                    lo: -n.hi,
                    hi: -n.lo,
                    sing_exp: n.sing_exp,
                    near_zero_pos: n.near_zero_neg,
                    near_zero_neg: n.near_zero_pos,
                })
            }
        }
    }

    /// The component restricted to `[-eps, eps]`; `None` when nothing is left.
    pub fn restricted(&self, eps: T) -> Option<Self> {
        match self {
            MeasureComponent::PowerLaw(p) => {
                Some(MeasureComponent::PowerLaw(TemperedPowerLaw { cutoff: p.cutoff.min(eps), ..*p }))
            }
            MeasureComponent::Atom(a) => (a.location.abs() <= eps).then_some(MeasureComponent::Atom(*a)),
            MeasureComponent::Numeric(n) => {
                let lo = n.lo.max(-eps);
                let hi = n.hi.min(eps);
                (lo < hi).then(|| MeasureComponent::Numeric(NumericDensity { lo, hi, ..n.clone() }))
            }
        }
    }

    /// Does the component charge `(0, x]` for every `x > 0` on `side`?
    pub fn charges_near_zero(&self, side: Side) -> bool {
        match self {
            MeasureComponent::PowerLaw(p) => p.side == side && p.has_mass(),
            MeasureComponent::Atom(_) => false,
            MeasureComponent::Numeric(n) => match side {
                Side::Positive => n.near_zero_pos,
                Side::Negative => n.near_zero_neg,
            },
        }
    }

    /// Does the component put any mass on `side` at all?
    pub fn charges_side(&self, side: Side) -> bool {
        match self {
            MeasureComponent::PowerLaw(p) => p.side == side && p.has_mass(),
            MeasureComponent::Atom(a) => Side::of(a.location) == side && a.mass > T::zero(),
            MeasureComponent::Numeric(n) => match side {
                Side::Positive => n.hi > T::zero(),
                Side::Negative => n.lo < T::zero(),
            },
        }
    }

    /// Is the total mass finite?
    pub fn is_finite_mass(&self) -> bool {
        match self {
            MeasureComponent::PowerLaw(p) => !p.has_mass() || p.alpha < T::zero(),
            MeasureComponent::Atom(_) => true,
            MeasureComponent::Numeric(n) => n.sing_exp < T::zero(),
        }
    }

    /// Is `∫_{|x|<=1} |x| dν` finite?
    pub fn has_finite_first_moment(&self) -> bool {
        match self {
            MeasureComponent::PowerLaw(p) => !p.has_mass() || p.alpha < T::one(),
            MeasureComponent::Atom(_) => true,
            MeasureComponent::Numeric(n) => n.sing_exp < T::one(),
        }
    }
}

/// Severity of a [`Violation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    /// Index of the offending component, `None` for triplet-level problems.
    pub component: Option<usize>,
    pub invariant: String,
    pub severity: Severity,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    /// No violation of severity [`Severity::Error`].
    pub fn is_valid(&self) -> bool {
        self.violations.iter().all(|v| v.severity != Severity::Error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.severity == Severity::Error)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            let sev = match v.severity {
                Severity::Error => "error",
                Severity::Warning => "warning",
            };
            match v.component {
                Some(i) => writeln!(f, "{sev}: component {i}: {}", v.invariant)?,
                None => writeln!(f, "{sev}: {}", v.invariant)?,
            }
        }
        Ok(())
    }
}

/// The `(ν, σ², b)` characterization of a real Lévy process, with `b` the drift
/// under the `1_{|x|<=1}` compensation.
#[derive(Clone, Debug)]
pub struct LevyTriplet<T> {
    components: Vec<MeasureComponent<T>>,
    sigma2: T,
    b: T,
    declared_c: Option<T>,
}

impl<T: Real> LevyTriplet<T> {
    pub fn new(components: Vec<MeasureComponent<T>>, sigma2: T, b: T) -> Self {
        Self { components, sigma2, b, declared_c: None }
    }

    pub fn gaussian(sigma2: T, b: T) -> Self {
        Self::new(Vec::new(), sigma2, b)
    }

    /// Builds the triplet from the effective drift `c = b - ∫_{|x|<=1} x ν(dx)`.
    ///
    /// `c` is remembered exactly, so a declared `c = 0` is a structural zero for
    /// classification and never suffers from cancellation in `b_ε`.
    pub fn with_effective_drift(components: Vec<MeasureComponent<T>>, sigma2: T, c: T) -> Self {
        let mut t = Self::new(components, sigma2, T::zero());
        let m1 = crate::measure::first_moment_band(&t.components, T::zero(), T::one());
        t.b = c + m1.value;
        t.declared_c = Some(c);
        t
    }

    pub fn components(&self) -> &[MeasureComponent<T>] {
        &self.components
    }

    pub fn sigma2(&self) -> T {
        self.sigma2
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// The effective drift passed to [`LevyTriplet::with_effective_drift`], if any.
    pub fn declared_effective_drift(&self) -> Option<T> {
        self.declared_c
    }

    /// Law of `-X`.
    pub fn reflect(&self) -> Self {
        Self {
            components: self.components.iter().map(MeasureComponent::reflect).collect(),
            sigma2: self.sigma2,
            b: -self.b,
            declared_c: self.declared_c.map(|c| -c),
        }
    }

    /// Same Gaussian part, Lévy measure restricted to `[-eps, eps]`, zero drift.
    pub fn martingale_part(&self, eps: T) -> Self {
        Self {
            components: self.components.iter().filter_map(|c| c.restricted(eps)).collect(),
            sigma2: self.sigma2,
            b: T::zero(),
            declared_c: None,
        }
    }

    /// Measure restricted to `[-eps, eps]`, keeping `σ²` and `b`.
    pub fn restricted(&self, eps: T) -> Self {
        Self {
            components: self.components.iter().filter_map(|c| c.restricted(eps)).collect(),
            sigma2: self.sigma2,
            b: self.b,
            declared_c: None,
        }
    }

    pub fn is_pure_gaussian(&self) -> bool {
        self.components.iter().all(|c| match c {
            MeasureComponent::PowerLaw(p) => !p.has_mass(),
            MeasureComponent::Atom(a) => a.mass == T::zero(),
            MeasureComponent::Numeric(_) => false,
        })
    }

    /// Every component is matched by its mirror image and `b = 0`.
    ///
    /// The test is structural: numeric densities never qualify.
    pub fn is_structurally_symmetric(&self) -> bool {
        self.b == T::zero() && self.declared_c.is_none_or(|c| c == T::zero()) && self.measure_is_symmetric()
    }

    /// Every component has a mirror partner (ignores the drift).
    pub fn measure_is_symmetric(&self) -> bool {
        let mut used = vec![false; self.components.len()];
        for (i, ci) in self.components.iter().enumerate() {
            if used[i] {
                continue;
            }
            let mirror = ci.reflect();
            let partner = self
                .components
                .iter()
                .enumerate()
                .position(|(j, cj)| !used[j] && j != i && same_component(&mirror, cj))
                .or_else(|| same_component(&mirror, ci).then_some(i));
            match partner {
                Some(j) => {
                    used[i] = true;
                    used[j] = true;
                }
                None => return false,
            }
        }
        true
    }

    /// Checks every type invariant; see [`ValidationReport`].
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut err = |component: Option<usize>, msg: String| {
            violations.push(Violation { component, invariant: msg, severity: Severity::Error })
        };
        if !(self.sigma2 >= T::zero()) || !self.sigma2.is_finite() {
            err(None, format!("sigma2 = {} must be finite and >= 0", self.sigma2));
        }
        if !self.b.is_finite() {
            err(None, "drift b must be finite".into());
        }
        for (i, comp) in self.components.iter().enumerate() {
            let i = Some(i);
            match comp {
                MeasureComponent::PowerLaw(p) => {
                    if !(p.alpha < lit(2.0)) {
                        err(i, format!("alpha = {} >= 2 breaks ∫1∧x² dν < ∞", p.alpha));
                    }
                    if !(p.c >= T::zero()) || !p.c.is_finite() {
                        err(i, format!("mass coefficient C = {} must be finite and >= 0", p.c));
                    }
                    if !(p.lambda >= T::zero()) || !p.lambda.is_finite() {
                        err(i, format!("tempering rate lambda = {} must be finite and >= 0", p.lambda));
                    }
                    if !(p.cutoff > T::zero()) {
                        err(i, format!("cutoff r = {} must be > 0", p.cutoff));
                    }
                    if p.lambda == T::zero() && p.cutoff.is_infinite() && p.alpha <= T::zero() && p.has_mass() {
                        err(i, "untempered power law with infinite cutoff and alpha <= 0 has infinite mass away from 0".into());
                    }
                }
                MeasureComponent::Atom(a) => {
                    if a.location == T::zero() {
                        err(i, "atom at origin".into());
                    }
                    if !a.location.is_finite() {
                        err(i, "atom location must be finite".into());
                    }
                    if !(a.mass > T::zero()) || !a.mass.is_finite() {
                        err(i, format!("atom mass {} must be finite and > 0", a.mass));
                    }
                }
                MeasureComponent::Numeric(n) => {
                    if !(n.sing_exp < lit(2.0)) {
                        err(i, format!("sing_exp = {} >= 2 breaks ∫1∧x² dν < ∞", n.sing_exp));
                    }
                    if !(n.lo < n.hi) {
                        err(i, "support interval must satisfy lo < hi".into());
                    }
                    if !n.lo.is_finite() || !n.hi.is_finite() {
                        err(i, "numeric density needs a bounded support".into());
                    }
                }
            }
        }
        if self.sigma2 == T::zero() && self.is_pure_gaussian() {
            violations.push(Violation {
                component: None,
                invariant: if self.b == T::zero() {
                    "degenerate: zero process".into()
                } else {
                    "degenerate: deterministic drift".into()
                },
                severity: Severity::Warning,
            });
        }
        ValidationReport { violations }
    }
}

fn same_component<T: Real>(a: &MeasureComponent<T>, b: &MeasureComponent<T>) -> bool {
    match (a, b) {
        (MeasureComponent::PowerLaw(x), MeasureComponent::PowerLaw(y)) => x == y,
        (MeasureComponent::Atom(x), MeasureComponent::Atom(y)) => x == y,
        _ => false,
    }
}

/// Strong (`∼`, known constant) or weak (`≈`) asymptotics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RateMode {
    Strong,
    Weak,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RateError {
    #[error("eps = {0} outside (0, e^-2)")]
    EpsOutOfRange(f64),
    #[error("a constant is given iff the mode is strong")]
    ConstantMismatch,
}

/// Symbolic rate `constant · ε^{-p} |log ε|^q (log|log ε|)^r`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateExpression<T> {
    pub pow_eps: T,
    pub pow_log: T,
    pub pow_loglog: T,
    pub mode: RateMode,
    pub constant: Option<T>,
    pub regime: String,
}

impl<T: Real> RateExpression<T> {
    pub fn weak(p: T, q: T, r: T, regime: impl Into<String>) -> Self {
        Self { pow_eps: p, pow_log: q, pow_loglog: r, mode: RateMode::Weak, constant: None, regime: regime.into() }
    }

    pub fn strong(p: T, constant: T, regime: impl Into<String>) -> Self {
        Self {
            pow_eps: p,
            pow_log: T::zero(),
            pow_loglog: T::zero(),
            mode: RateMode::Strong,
            constant: Some(constant),
            regime: regime.into(),
        }
    }

    pub fn check(&self) -> Result<(), RateError> {
        match (self.mode, self.constant) {
            (RateMode::Strong, Some(_)) | (RateMode::Weak, None) => Ok(()),
            _ => Err(RateError::ConstantMismatch),
        }
    }

    /// Evaluates the rate at `eps ∈ (0, e^{-2})`.
    pub fn eval(&self, eps: T) -> Result<T, RateError> {
        self.check()?;
        let upper = lit::<T>(-2.0).exp();
        if !(eps > T::zero() && eps < upper) {
            return Err(RateError::EpsOutOfRange(eps.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(self.eval_unchecked(eps))
    }

    /// Evaluation without the range check (used when fitting slopes near `e^{-2}`).
    pub fn eval_unchecked(&self, eps: T) -> T {
        let l = eps.ln().abs();
        let c = self.constant.unwrap_or_else(T::one);
        c * eps.powf(-self.pow_eps) * l.powf(self.pow_log) * l.ln().powf(self.pow_loglog)
    }

    /// The same rate shape with its `ε^{-p}` factor stripped.
    pub fn log_corrections(&self, eps: T) -> T {
        let l = eps.ln().abs();
        l.powf(self.pow_log) * l.ln().powf(self.pow_loglog)
    }
}

impl<T: Real> fmt::Display for RateExpression<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(c) = self.constant {
            parts.push(format!("{c}"));
        }
        if self.pow_eps != T::zero() {
            parts.push(format!("eps^-{}", self.pow_eps));
        }
        if self.pow_log == T::one() {
            parts.push("|log eps|".to_string());
        } else if self.pow_log != T::zero() {
            parts.push(format!("|log eps|^{}", self.pow_log));
        }
        if self.pow_loglog == T::one() {
            parts.push("loglog".to_string());
        } else if self.pow_loglog != T::zero() {
            parts.push(format!("loglog^{}", self.pow_loglog));
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        write!(f, "{}", parts.join(" * "))
    }
}
