//! Integral functionals of a Lévy measure: tail masses, truncated moments and
//! exponentially tilted integrals over `[-eps, eps]`.
//!
//! Power-law components go through the unit-interval kernel
//!
//! ```text
//! J(k, β, γ) = ∫_0^1 (e^{γx} - Σ_{j<k} (γx)^j / j!) x^{β-1} dx
//! ```
//!
//! and the scaling `∫_0^a (...) y^{β-1} dy = a^β J(k, β, γa)`. Tempering is
//! folded into the tilt. Numeric densities are integrated by adaptive
//! quadrature.

use serde::Serialize;
use thiserror::Error;

use crate::model::{Atom, LevyTriplet, MeasureComponent, NumericDensity, Side, TemperedPowerLaw};
use crate::quad::{integrate, integrate_origin_singular, QuadOptions};
use crate::real::{exp_m1_m, lit, overflow_limit, Real};
use crate::special::{gamma, upper_gamma};

/// Which tilted integrand to evaluate over `[-eps, eps] \ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `∫ e^{ux} ν(dx)`
    Plain,
    /// `∫ (e^{ux} - 1) ν(dx)`
    Compensated1,
    /// `∫ (e^{ux} - 1) x ν(dx)`
    Compensated1x,
    /// `∫ (e^{ux} - 1 - ux) ν(dx)`
    Compensated2,
    /// `∫ x² e^{ux} ν(dx)`
    Moment2Tilted,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Plain,
        Variant::Compensated1,
        Variant::Compensated1x,
        Variant::Compensated2,
        Variant::Moment2Tilted,
    ];

    /// Order of vanishing of the integrand (times the density's `|x|^{1+α}`) at 0.
    fn order_at_zero(self) -> i32 {
        match self {
            Variant::Plain => 0,
            Variant::Compensated1 => 1,
            Variant::Compensated1x | Variant::Compensated2 | Variant::Moment2Tilted => 2,
        }
    }

    /// Pointwise integrand at `x`, without the measure.
    pub fn integrand<T: Real>(self, u: T, x: T) -> T {
        let z = u * x;
        match self {
            Variant::Plain => z.exp(),
            Variant::Compensated1 => z.exp_m1(),
            Variant::Compensated1x => z.exp_m1() * x,
            Variant::Compensated2 => exp_m1_m(z),
            Variant::Moment2Tilted => x * x * z.exp(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Closed forms / series wherever available, quadrature otherwise.
    Analytic,
    /// Adaptive quadrature for every continuous component.
    Quadrature,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TiltedIntegralRequest<T> {
    pub eps: T,
    pub u: T,
    pub variant: Variant,
}

/// Value of an integral with an absolute error estimate.
///
/// An infinite `value` is the overflow flag: the tilt pushed `e^{ux}` past the
/// representable range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Integral<T> {
    pub value: T,
    pub abs_err: T,
}

impl<T: Real> Integral<T> {
    pub fn exact(value: T) -> Self {
        Self { value, abs_err: T::zero() }
    }

    pub fn zero() -> Self {
        Self::exact(T::zero())
    }

    pub fn is_overflow(&self) -> bool {
        self.value.is_infinite()
    }

    fn add(self, other: Self) -> Self {
        Self { value: self.value + other.value, abs_err: self.abs_err + other.abs_err }
    }
}

/// A real number or a flagged divergence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extended<T> {
    Finite(T),
    Infinite,
}

impl<T: Real> Extended<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn to_real(self) -> T {
        self.finite().unwrap_or_else(T::infinity)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("component {component}: {variant:?} integral diverges at the origin")]
    Divergent { component: usize, variant: Variant },
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("component {0} charges the negative half-line; a subordinator measure is required")]
    NotOneSided(usize),
    #[error("component {0}: integral over an infinite range diverges")]
    DivergentTail(usize),
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Series `Σ_{n≥k} γ^n / (n! (n+β))` valid for every γ, used for `γ >= -1`.
fn kernel_series<T: Real>(k: usize, beta: T, g: T) -> T {
    let mut t = T::one(); // γ^n / n!
    for n in 1..=k {
        t = t * g / lit(n as f64);
    }
    let mut n = k;
    let mut sum = T::zero();
    let ag = g.abs();
    loop {
        let add = t / (lit::<T>(n as f64) + beta);
        sum = sum + add;
        let nf: T = lit(n as f64);
        if nf > ag && add.abs() <= T::epsilon() * lit::<T>(0.25) * sum.abs() {
            break;
        }
        if t == T::zero() || n > 20_000 {
            break;
        }
        n += 1;
        t = t * g / lit(n as f64);
    }
    sum
}

/// `J(k, β, γ) = ∫_0^1 (e^{γx} - Σ_{j<k} (γx)^j / j!) x^{β-1} dx`, requires `β + k > 0`.
///
/// Returns `+inf` when `γ` exceeds the overflow threshold.
pub fn unit_kernel<T: Real>(k: usize, beta: T, g: T) -> T {
    if g == T::zero() {
        return if k == 0 { beta.recip() } else { T::zero() };
    }
    if g > overflow_limit::<T>() {
        return T::infinity();
    }
    if g >= -T::one() {
        return kernel_series(k, beta, g);
    }
    // y = Z x with Z = -γ > 1; split ∫_0^Z at 1.
    let z = -g;
    let one = T::one();
    let mut bracket = kernel_series(k, beta, -one) + upper_gamma(beta, one) - upper_gamma(beta, z);
    let mut fact = one;
    for j in 0..k {
        if j > 0 {
            fact = fact * lit(j as f64);
        }
        let sign = if j % 2 == 0 { one } else { -one };
        let e = beta + lit(j as f64);
        let poly = if e == T::zero() { z.ln() } else { (e * z.ln()).exp_m1() / e };
        bracket = bracket - sign / fact * poly;
    }
    (-beta * z.ln()).exp() * bracket
}

/// `(β, k)` such that the power-law integrand over `(0, a]` equals `a^β J(k, β, ·)` up to constants.
fn power_law_shape<T: Real>(alpha: T, variant: Variant) -> (T, usize) {
    match variant {
        Variant::Plain => (-alpha, 0),
        Variant::Compensated1 => (-alpha, 1),
        Variant::Compensated1x => (T::one() - alpha, 1),
        Variant::Compensated2 => (-alpha, 2),
        Variant::Moment2Tilted => (lit::<T>(2.0) - alpha, 0),
    }
}

fn variant_converges<T: Real>(alpha: T, variant: Variant) -> bool {
    match variant {
        Variant::Plain => alpha < T::zero(),
        Variant::Compensated1 => alpha < T::one(),
        _ => alpha < lit(2.0),
    }
}

fn power_law_tilted_analytic<T: Real>(p: &TemperedPowerLaw<T>, eps: T, u: T, variant: Variant) -> T {
    let a = eps.min(p.cutoff);
    if !p.has_mass() || a <= T::zero() {
        return T::zero();
    }
    let s = p.side.sign::<T>();
    let w = s * u;
    let lam = p.lambda;
    let (beta, k) = power_law_shape(p.alpha, variant);
    let scale = p.c * (beta * a.ln()).exp();
    let g = (w - lam) * a;
    let main = match k {
        0 => unit_kernel(0, beta, g),
        _ if lam == T::zero() => unit_kernel(k, beta, g),
        _ => unit_kernel(k, beta, g) - unit_kernel(k, beta, -lam * a),
    };
    let mut v = scale * main;
    if variant == Variant::Compensated2 && lam > T::zero() {
        // ∫ (e^{wy}-1-wy) e^{-λy} = I2(w-λ) - I2(-λ) - w ∫ y (e^{-λy} - 1)
        v = v - w * scale * a * unit_kernel(1, beta + T::one(), -lam * a);
    }
    if variant == Variant::Compensated1x {
        v = s * v;
    }
    v
}

fn power_law_tilted_quadrature<T: Real>(p: &TemperedPowerLaw<T>, eps: T, u: T, variant: Variant) -> Integral<T> {
    let a = eps.min(p.cutoff);
    if !p.has_mass() || a <= T::zero() {
        return Integral::zero();
    }
    let s = p.side.sign::<T>();
    let beta_eff = lit::<T>(variant.order_at_zero() as f64) - p.alpha;
    let f = |y: T| variant.integrand(u, s * y) * p.density_abs(y);
    let opts = QuadOptions::default();
    let mut r = integrate_origin_singular(f, a, beta_eff, &opts);
    // the absolute floor dominates for small values; retry with it scaled to the result
    if r.value != T::zero() && r.value.abs() < T::one() {
        let scaled = QuadOptions { abs_tol: opts.abs_tol * r.value.abs(), ..opts };
        r = integrate_origin_singular(f, a, beta_eff, &scaled);
    }
    Integral { value: r.value, abs_err: r.abs_err }
}

/// Integrates `g(x)·density(x)` over the part of the numeric support inside `[-eps, eps]`.
fn numeric_integral<T: Real, G: Fn(T) -> T>(n: &NumericDensity<T>, eps: T, order: i32, g: G) -> Option<Integral<T>> {
    let mut total = Integral::zero();
    let beta = lit::<T>(order as f64) - n.sing_exp;
    let opts = QuadOptions::default();
    for side in [Side::Positive, Side::Negative] {
        let s = side.sign::<T>();
        // |x| range on this side
        let (near, far) = match side {
            Side::Positive => (n.lo.max(T::zero()), n.hi.min(eps)),
            Side::Negative => ((-n.hi).max(T::zero()), (-n.lo).min(eps)),
        };
        if far <= near {
            continue;
        }
        let f = |y: T| g(s * y) * n.eval(s * y);
        let r = if near == T::zero() {
            if beta <= T::zero() {
                return None;
            }
            integrate_origin_singular(f, far, beta, &opts)
        } else {
            integrate(f, near, far, &opts)
        };
        total = total.add(Integral { value: r.value, abs_err: r.abs_err });
    }
    Some(total)
}

fn atom_tilted<T: Real>(a: &Atom<T>, eps: T, u: T, variant: Variant) -> T {
    if a.location.abs() > eps {
        return T::zero();
    }
    let z = u * a.location;
    if z > overflow_limit::<T>() {
        let sign = if variant == Variant::Compensated1x { a.location.signum() } else { T::one() };
        return sign * T::infinity();
    }
    a.mass * variant.integrand(u, a.location)
}

/// `∫_{[-eps, eps]\{0}} f_variant(u, x) ν(dx)` with the default (analytic) method.
pub fn tilted_integral<T: Real>(
    components: &[MeasureComponent<T>],
    req: &TiltedIntegralRequest<T>,
) -> Result<Integral<T>, MeasureError> {
    tilted_integral_with(components, req, Method::Analytic)
}

pub fn tilted_integral_with<T: Real>(
    components: &[MeasureComponent<T>],
    req: &TiltedIntegralRequest<T>,
    method: Method,
) -> Result<Integral<T>, MeasureError> {
    let TiltedIntegralRequest { eps, u, variant } = *req;
    if !(eps > T::zero()) || eps.is_nan() {
        return Err(MeasureError::InvalidRadius(to_f64(eps)));
    }
    let mut total = Integral::zero();
    for (i, comp) in components.iter().enumerate() {
        let part = match comp {
            MeasureComponent::PowerLaw(p) => {
                if p.has_mass() && !variant_converges(p.alpha, variant) {
                    return Err(MeasureError::Divergent { component: i, variant });
                }
                match method {
                    Method::Analytic => {
                        let v = power_law_tilted_analytic(p, eps, u, variant);
                        Integral { value: v, abs_err: v.abs() * lit(1e-14) }
                    }
                    Method::Quadrature => power_law_tilted_quadrature(p, eps, u, variant),
                }
            }
            MeasureComponent::Atom(a) => Integral::exact(atom_tilted(a, eps, u, variant)),
            MeasureComponent::Numeric(n) => numeric_integral(n, eps, variant.order_at_zero(), |x| variant.integrand(u, x))
                .ok_or(MeasureError::Divergent { component: i, variant })?,
        };
        total = total.add(part);
    }
    Ok(total)
}

/// `ν({|x| > eps})`.
pub fn tail_mass<T: Real>(components: &[MeasureComponent<T>], eps: T) -> Result<T, MeasureError> {
    if !(eps > T::zero()) {
        return Err(MeasureError::InvalidRadius(to_f64(eps)));
    }
    let mut total = T::zero();
    for comp in components {
        total = total
            + match comp {
                MeasureComponent::PowerLaw(p) => power_law_band_mass(p, eps, p.cutoff),
                MeasureComponent::Atom(a) => {
                    if a.location.abs() > eps {
                        a.mass
                    } else {
                        T::zero()
                    }
                }
                MeasureComponent::Numeric(n) => numeric_band(n, eps, T::infinity(), |_| T::one()),
            };
    }
    Ok(total)
}

/// `∫_{lo < |x| <= hi} g(x) ν(dx)` for a numeric density, `lo > 0`.
fn numeric_band<T: Real, G: Fn(T) -> T>(n: &NumericDensity<T>, lo: T, hi: T, g: G) -> T {
    let opts = QuadOptions::default();
    let mut total = T::zero();
    let pos = (lo.max(n.lo), hi.min(n.hi));
    if pos.1 > pos.0 {
        total = total + integrate(|x| g(x) * n.eval(x), pos.0, pos.1, &opts).value;
    }
    let neg = ((-hi).max(n.lo), (-lo).min(n.hi));
    if neg.1 > neg.0 {
        total = total + integrate(|x| g(x) * n.eval(x), neg.0, neg.1, &opts).value;
    }
    total
}

/// Mass of a power-law component on `lo < |x| <= hi` (`lo > 0`).
fn power_law_band_mass<T: Real>(p: &TemperedPowerLaw<T>, lo: T, hi: T) -> T {
    let hi = hi.min(p.cutoff);
    if !p.has_mass() || hi <= lo {
        return T::zero();
    }
    let alpha = p.alpha;
    if p.lambda == T::zero() {
        if alpha == T::zero() {
            return p.c * (hi / lo).ln();
        }
        if hi.is_infinite() {
            // alpha > 0 guaranteed by validation
            return p.c * (-alpha * lo.ln()).exp() / alpha;
        }
        // lo^{-α}(1 - (lo/hi)^{α}) / α
        return -p.c * (-alpha * lo.ln()).exp() * (alpha * (lo / hi).ln()).exp_m1() / alpha;
    }
    let lam = p.lambda;
    let s = -alpha;
    let g_hi = if hi.is_infinite() { T::zero() } else { upper_gamma(s, lam * hi) };
    p.c * (alpha * lam.ln()).exp() * (upper_gamma(s, lam * lo) - g_hi)
}

/// `∫_{|x| <= eps} |x|^p ν(dx)`, optionally restricted to one side.
///
/// Infinite exactly when a power-law component with mass has `alpha >= p`.
pub fn abs_moment<T: Real>(components: &[MeasureComponent<T>], eps: T, p: T, side: Option<Side>) -> Extended<T> {
    let mut total = T::zero();
    for comp in components {
        let on_side = |s: Side| side.is_none_or(|want| want == s);
        match comp {
            MeasureComponent::PowerLaw(pl) => {
                if !pl.has_mass() || !on_side(pl.side) {
                    continue;
                }
                if pl.alpha >= p {
                    return Extended::Infinite;
                }
                let a = eps.min(pl.cutoff);
                let beta = p - pl.alpha;
                let scale = pl.c * (beta * a.ln()).exp();
                total = total
                    + if pl.lambda == T::zero() {
                        scale / beta
                    } else {
                        scale * unit_kernel(0, beta, -pl.lambda * a)
                    };
            }
            MeasureComponent::Atom(a) => {
                if a.location.abs() <= eps && on_side(Side::of(a.location)) {
                    total = total + a.mass * a.location.abs().powf(p);
                }
            }
            MeasureComponent::Numeric(n) => {
                let order = if p == T::zero() { 0 } else { p.ceil().to_i32().unwrap_or(2) };
                // declare the true growth: |x|^p · |x|^{-1-s}
                let shifted = NumericDensity { sing_exp: n.sing_exp - p + lit(order as f64), ..n.clone() };
                let r = numeric_integral(&shifted, eps, order, |x: T| {
                    if on_side(Side::of(x)) {
                        x.abs().powf(p)
                    } else {
                        T::zero()
                    }
                });
                match r {
                    Some(v) => total = total + v.value,
                    None => return Extended::Infinite,
                }
            }
        }
    }
    Extended::Finite(total)
}

/// Signed first moment `∫_{lo < |x| <= hi} x ν(dx)`, `0 <= lo < hi <= ∞`.
///
/// With `lo = 0` the value is infinite (signed by side) when the first moment diverges.
pub fn first_moment_band<T: Real>(components: &[MeasureComponent<T>], lo: T, hi: T) -> Integral<T> {
    let mut total = Integral::zero();
    for comp in components {
        let part = match comp {
            MeasureComponent::PowerLaw(p) => Integral {
                value: power_law_first_moment(p, lo, hi),
                abs_err: T::zero(),
            },
            MeasureComponent::Atom(a) => {
                let r = a.location.abs();
                Integral::exact(if r > lo && r <= hi { a.mass * a.location } else { T::zero() })
            }
            MeasureComponent::Numeric(n) => {
                if lo > T::zero() {
                    Integral::exact(numeric_band(n, lo, hi, |x| x))
                } else {
                    numeric_integral(n, hi, 1, |x| x).unwrap_or(Integral::exact(T::nan()))
                }
            }
        };
        total = total.add(part);
    }
    total
}

fn power_law_first_moment<T: Real>(p: &TemperedPowerLaw<T>, lo: T, hi: T) -> T {
    let h = hi.min(p.cutoff);
    if !p.has_mass() || h <= lo {
        return T::zero();
    }
    let s = p.side.sign::<T>();
    let alpha = p.alpha;
    let one = T::one();
    let e = one - alpha;
    let v = if p.lambda == T::zero() {
        if lo == T::zero() {
            if alpha >= one {
                T::infinity()
            } else {
                (e * h.ln()).exp() / e
            }
        } else if h.is_infinite() {
            -(e * lo.ln()).exp() / e
        } else if alpha == one {
            (h / lo).ln()
        } else {
            (e * lo.ln()).exp() * (e * (h / lo).ln()).exp_m1() / e
        }
    } else {
        let lam = p.lambda;
        if lo == T::zero() {
            if alpha >= one {
                T::infinity()
            } else if h.is_infinite() {
                (-e * lam.ln()).exp() * gamma(e)
            } else {
                (e * h.ln()).exp() * unit_kernel(0, e, -lam * h)
            }
        } else {
            let g_hi = if h.is_infinite() { T::zero() } else { upper_gamma(e, lam * h) };
            (-e * lam.ln()).exp() * (upper_gamma(e, lam * lo) - g_hi)
        }
    };
    p.c * s * v
}

/// Truncated drift `b_ε`: `b - ∫_{ε<|x|<=1} x ν` for `ε <= 1`, `b + ∫_{1<|x|<=ε} x ν` above.
///
/// When the triplet was built from its effective drift `c`, uses the
/// cancellation-free form `c + ∫_{|x|<=ε} x ν`.
pub fn truncated_drift<T: Real>(triplet: &LevyTriplet<T>, eps: T) -> Integral<T> {
    let comps = triplet.components();
    if let Some(c) = triplet.declared_effective_drift() {
        let m = first_moment_band(comps, T::zero(), eps);
        if m.value.is_finite() {
            return Integral { value: c + m.value, abs_err: m.abs_err };
        }
    }
    let one = T::one();
    if eps <= one {
        let m = first_moment_band(comps, eps, one);
        Integral { value: triplet.b() - m.value, abs_err: m.abs_err }
    } else {
        let m = first_moment_band(comps, one, eps);
        Integral { value: triplet.b() + m.value, abs_err: m.abs_err }
    }
}

/// Laplace exponent `Φ(u) = drift·u + ∫_{(0,∞)} (1 - e^{-ux}) ν(dx)` of a subordinator measure.
pub fn laplace_exponent<T: Real>(components: &[MeasureComponent<T>], drift: T, u: T) -> Result<T, MeasureError> {
    let mut total = drift * u;
    for (i, comp) in components.iter().enumerate() {
        if comp.charges_side(Side::Negative) {
            return Err(MeasureError::NotOneSided(i));
        }
        total = total
            + match comp {
                MeasureComponent::PowerLaw(p) => {
                    if !p.has_mass() {
                        continue;
                    }
                    if p.alpha >= T::one() {
                        return Err(MeasureError::Divergent { component: i, variant: Variant::Compensated1 });
                    }
                    if p.cutoff.is_finite() {
                        -power_law_tilted_analytic(p, p.cutoff, -u, Variant::Compensated1)
                    } else if p.lambda == T::zero() {
                        if p.alpha <= T::zero() {
                            return Err(MeasureError::DivergentTail(i));
                        }
                        p.c * gamma(T::one() - p.alpha) / p.alpha * (p.alpha * u.ln()).exp()
                    } else if p.alpha == T::zero() {
                        p.c * (u / p.lambda).ln_1p()
                    } else {
                        let lam = p.lambda;
                        // Γ(-α) (λ^α - (λ+u)^α)
                        let la = (p.alpha * lam.ln()).exp();
                        p.c * gamma(-p.alpha) * la * -(p.alpha * (u / lam).ln_1p()).exp_m1()
                    }
                }
                MeasureComponent::Atom(a) => -a.mass * (-u * a.location).exp_m1(),
                MeasureComponent::Numeric(n) => {
                    let far = n.hi;
                    numeric_integral(n, far, 1, |x: T| -(-u * x).exp_m1())
                        .ok_or(MeasureError::Divergent { component: i, variant: Variant::Compensated1 })?
                        .value
                }
            };
    }
    Ok(total)
}

/// Ratios of the three unit integrals `∫_0^1 (e^{γx} - Σ_{j<k} (γx)^j/j!) x^{-α} dx`
/// (k = 2, 1, 0) to their comparison functions `(e^γ - Σ_{j<=k} γ^j/j!)/γ`.
///
/// `None` for rows whose integral diverges. At `γ = 0` every ratio is 1 by convention.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitIntegralRatios<T> {
    pub second_order: Option<T>,
    pub first_order: Option<T>,
    pub plain: Option<T>,
}

pub fn lemma52_bounds_check<T: Real>(alpha: T, g: T) -> Result<UnitIntegralRatios<T>, MeasureError> {
    let beta = T::one() - alpha;
    if beta + lit(2.0) <= T::zero() {
        return Err(MeasureError::Divergent { component: 0, variant: Variant::Compensated2 });
    }
    let row = |k: usize| -> Option<T> {
        if beta + lit(k as f64) <= T::zero() {
            return None;
        }
        if g == T::zero() {
            return Some(T::one());
        }
        let integral = unit_kernel(k, beta, g);
        let comparison = exp_tail(k + 1, g) / g;
        Some(integral / comparison)
    };
    Ok(UnitIntegralRatios { second_order: row(2), first_order: row(1), plain: row(0) })
}

/// `Σ_{n>=m} γ^n / n!` without cancellation for small `γ`.
fn exp_tail<T: Real>(m: usize, g: T) -> T {
    if g.abs() > lit(2.0) {
        let mut poly = T::zero();
        let mut t = T::one();
        for n in 0..m {
            if n > 0 {
                t = t * g / lit(n as f64);
            }
            poly = poly + t;
        }
        return g.exp() - poly;
    }
    let mut t = T::one();
    for n in 1..=m {
        t = t * g / lit(n as f64);
    }
    let mut sum = t;
    let mut n = m;
    while t.abs() > T::epsilon() * sum.abs() && n < 200 {
        n += 1;
        t = t * g / lit(n as f64);
        sum = sum + t;
    }
    sum
}
