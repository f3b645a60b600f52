//! Globally adaptive Gauss–Kronrod (G10/K21) quadrature with helpers for
//! integrable endpoint singularities and log-scaled bands.

use crate::real::{lit, Real};

// Abscissae/weights of the 21-point Kronrod rule and embedded 10-point Gauss rule.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Tolerances for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadOptions<T> {
    fn default() -> Self {
        Self {
            abs_tol: lit(1e-11),
            rel_tol: lit(1e-10),
            max_intervals: 400,
        }
    }
}

impl<T: Real> QuadOptions<T> {
    pub fn tight() -> Self {
        Self {
            abs_tol: T::zero(),
            rel_tol: lit(1e-14),
            max_intervals: 2_000,
        }
    }
}

/// Quadrature estimate with its absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_err: T,
    pub intervals: usize,
    pub converged: bool,
}

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    err: T,
}

fn kronrod21<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = lit::<T>(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut res_k = fc * lit(WGK[10]);
    let mut res_g = T::zero();
    for j in 0..10 {
        let dx = half_len * lit(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        res_k = res_k + pair * lit(WGK[j]);
        if j % 2 == 1 {
            res_g = res_g + pair * lit(WG[j / 2]);
        }
    }
    let value = res_k * half_len;
    let err = ((res_k - res_g) * half_len).abs();
    (value, err)
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, opts: &QuadOptions<T>) -> QuadResult<T> {
    if a == b {
        return QuadResult {
            value: T::zero(),
            abs_err: T::zero(),
            intervals: 0,
            converged: true,
        };
    }
    let (v, e) = kronrod21(&f, a, b);
    let mut segs = vec![Segment { a, b, value: v, err: e }];
    let mut total = v;
    let mut total_err = e;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if total_err <= target || !total_err.is_finite() {
            break;
        }
        if segs.len() >= opts.max_intervals {
            return QuadResult {
                value: total,
                abs_err: total_err,
                intervals: segs.len(),
                converged: false,
            };
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, be), (i, s)| {
                if s.err > be {
                    (i, s.err)
                } else {
                    (bi, be)
                }
            });
        let seg = segs.swap_remove(worst);
        let mid = lit::<T>(0.5) * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            segs.push(seg);
            break;
        }
        let (v1, e1) = kronrod21(&f, seg.a, mid);
        let (v2, e2) = kronrod21(&f, mid, seg.b);
        segs.push(Segment { a: seg.a, b: mid, value: v1, err: e1 });
        segs.push(Segment { a: mid, b: seg.b, value: v2, err: e2 });
        // resum to avoid drift from repeated add/subtract
        total = segs.iter().fold(T::zero(), |acc, s| acc + s.value);
        total_err = segs.iter().fold(T::zero(), |acc, s| acc + s.err);
    }
    QuadResult {
        value: total,
        abs_err: total_err,
        intervals: segs.len(),
        converged: total_err <= opts.abs_tol.max(opts.rel_tol * total.abs()),
    }
}

/// Integrates `f` over `(0, b]` when `f(x) ~ x^{beta-1}` near the origin (`beta > 0`).
///
/// Uses `x = b t^p` with `p = 2/beta` (for `beta < 2`), which turns the leading
/// behaviour into `t^1`.
pub fn integrate_origin_singular<T: Real, F: Fn(T) -> T>(
    f: F,
    b: T,
    beta: T,
    opts: &QuadOptions<T>,
) -> QuadResult<T> {
    let two = lit::<T>(2.0);
    let p = if beta < two { two / beta } else { T::one() };
    if p == T::one() {
        return integrate(f, T::zero(), b, opts);
    }
    let g = |t: T| {
        if t <= T::zero() {
            return T::zero();
        }
        let x = b * t.powf(p);
        if x <= T::zero() {
            return T::zero();
        }
        f(x) * b * p * t.powf(p - T::one())
    };
    integrate(g, T::zero(), T::one(), opts)
}

/// Integrates `f` over `[lo, hi]`, `0 < lo < hi`, in the variable `ln x`.
pub fn integrate_log_scale<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, opts: &QuadOptions<T>) -> QuadResult<T> {
    let g = |t: T| {
        let x = t.exp();
        f(x) * x
    };
    integrate(g, lo.ln(), hi.ln(), opts)
}
