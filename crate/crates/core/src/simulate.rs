//! Monte Carlo estimation of `P(sup_{t<=1} |X_t| <= ε)`.
//!
//! Jumps larger than a truncation radius `δ` are drawn exactly as a marked Poisson
//! process. Smaller jumps are either replaced by a variance-matched Brownian part
//! or dropped, keeping only their drift. The continuous part is simulated exactly
//! between consecutive event times (grid points and jump instants), and by default
//! a Brownian-bridge crossing probability accounts for excursions between those
//! times, so the only remaining error is the small-jump approximation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::measure::{abs_moment, truncated_drift, Extended};
use crate::model::{LevyTriplet, MeasureComponent, TemperedPowerLaw};
use crate::special::erfc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallJumpMode {
    GaussianSubstitute,
    DriftOnly,
}

impl SmallJumpMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SmallJumpMode::GaussianSubstitute => "gaussian_substitute",
            SmallJumpMode::DriftOnly => "drift_only",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimulationConfig {
    pub n_paths: usize,
    /// Monitoring points per unit time.
    pub grid_n: usize,
    /// Small-jump truncation radius; `None` means `ε/10` (capped below the smallest atom).
    pub delta: Option<f64>,
    pub small_jump_mode: SmallJumpMode,
    pub seed: u64,
    /// Account for Brownian excursions between monitoring times.
    pub bridge_correction: bool,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            n_paths: 100_000,
            grid_n: 1024,
            delta: None,
            small_jump_mode: SmallJumpMode::GaussianSubstitute,
            seed: 0x5EED,
            bridge_correction: true,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulationError {
    #[error("n_paths must be at least 100 (got {0})")]
    TooFewPaths(usize),
    #[error("grid_n must be at least 16 (got {0})")]
    GridTooCoarse(usize),
    #[error("eps must be positive and finite")]
    InvalidEps,
    #[error("delta = {delta} must be positive and below eps/4 = {limit}")]
    DeltaTooLarge { delta: f64, limit: f64 },
    #[error("delta = {delta} must lie below every atom location (smallest |location| = {atom})")]
    DeltaAboveAtom { delta: f64, atom: f64 },
    #[error("numeric densities cannot be sampled")]
    UnsupportedComponent,
    #[error("invalid triplet: {0}")]
    InvalidTriplet(String),
    #[error("small-jump variance is infinite")]
    InfiniteVariance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmallBallEstimate {
    pub eps: f64,
    pub p_hat: f64,
    pub stderr: f64,
    pub n_paths: usize,
    pub successes: usize,
    pub delta: f64,
    pub small_jump_mode: SmallJumpMode,
    pub bias_note: &'static str,
}

impl SmallBallEstimate {
    fn from_count(eps: f64, successes: usize, n: usize, delta: f64, mode: SmallJumpMode, note: &'static str) -> Self {
        let p = successes as f64 / n as f64;
        Self {
            eps,
            p_hat: p,
            stderr: (p * (1.0 - p) / n as f64).sqrt(),
            n_paths: n,
            successes,
            delta,
            small_jump_mode: mode,
            bias_note: note,
        }
    }

    /// Upper end of a one-sided 95% interval; for `p_hat = 0` this is `3/n`.
    pub fn upper_95(&self) -> f64 {
        if self.successes == 0 {
            3.0 / self.n_paths as f64
        } else {
            (self.p_hat + 1.645 * self.stderr).min(1.0)
        }
    }
}

const NOTE_BRIDGE: &str = "continuous-part excursions corrected by Brownian bridge; remaining bias from the small-jump approximation";
const NOTE_GRID: &str = "grid sup <= true sup, so p_hat overestimates";
const NOTE_TERMINAL: &str = "terminal value only; bias from the small-jump approximation";

/// Jumps of one component with `|x| > δ`, sampled by proposal and thinning.
#[derive(Clone, Debug)]
struct JumpSampler {
    sign: f64,
    pieces: Vec<Piece>,
}

#[derive(Clone, Debug)]
enum Piece {
    /// Proposal `∝ x^{-1-α}` on `(lo, hi]`, accepted with `e^{-λ(x - lo)}`.
    Power { alpha: f64, lambda: f64, lo: f64, hi: f64, intensity: f64 },
    /// Proposal `lo + Exp(rate)` cut at `hi`, accepted with `(x^k e^{-λx}) / envelope`.
    Tail { k: f64, lambda: f64, rate: f64, lo: f64, hi: f64, log_env: f64, intensity: f64 },
    Atom { size: f64, intensity: f64 },
}

/// `∫_lo^hi x^{-1-α} dx`
fn power_integral(alpha: f64, lo: f64, hi: f64) -> f64 {
    if alpha == 0.0 {
        (hi / lo).ln()
    } else if hi.is_infinite() {
        lo.powf(-alpha) / alpha
    } else {
        (lo.powf(-alpha) - hi.powf(-alpha)) / alpha
    }
}

fn sample_power(alpha: f64, lo: f64, hi: f64, u: f64) -> f64 {
    if alpha == 0.0 {
        lo * (hi / lo).powf(u)
    } else {
        let hi_term = if hi.is_infinite() { 0.0 } else { hi.powf(-alpha) };
        ((1.0 - u) * lo.powf(-alpha) + u * hi_term).powf(-1.0 / alpha)
    }
}

impl JumpSampler {
    fn power_law(p: &TemperedPowerLaw<f64>, delta: f64) -> Option<Self> {
        if !p.has_mass() || p.cutoff <= delta {
            return None;
        }
        let (alpha, lambda, r) = (p.alpha, p.lambda, p.cutoff);
        let mut pieces = Vec::new();
        // split so that the thinning on the first piece accepts with probability >= 1/e
        let split = if lambda > 0.0 { r.min(delta.max(1.0 / lambda)) } else { r };
        if split > delta {
            let intensity = p.c * (-lambda * delta).exp() * power_integral(alpha, delta, split);
            pieces.push(Piece::Power { alpha, lambda, lo: delta, hi: split, intensity });
        }
        if split < r {
            // tempered tail beyond 1/λ: envelope C·M·e^{-rate·x} with M the maximum of
            // x^k e^{-(λ-rate)x} on (split, ∞)
            let k = -1.0 - alpha;
            let rate = if k > 0.0 { lambda / 2.0 } else { lambda };
            let log_env = if k > 0.0 {
                let xm = (k / (lambda - rate)).max(split);
                k * xm.ln() - (lambda - rate) * xm
            } else {
                k * split.ln() - (lambda - rate) * split
            };
            // proposals beyond the cutoff are discarded, so the intensity covers (split, ∞)
            let intensity = p.c * (log_env - rate * split).exp() / rate;
            pieces.push(Piece::Tail { k, lambda, rate, lo: split, hi: r, log_env, intensity });
        }
        Some(Self { sign: p.side.sign(), pieces })
    }

    fn atom(location: f64, mass: f64) -> Self {
        Self { sign: location.signum(), pieces: vec![Piece::Atom { size: location.abs(), intensity: mass }] }
    }

    /// Appends accepted `(time, size)` pairs on `[0, 1]`.
    fn sample<R: Rng>(&self, rng: &mut R, out: &mut Vec<(f64, f64)>) {
        for piece in &self.pieces {
            let intensity = match piece {
                Piece::Power { intensity, .. } | Piece::Tail { intensity, .. } | Piece::Atom { intensity, .. } => *intensity,
            };
            if intensity <= 0.0 {
                continue;
            }
            let n = Poisson::new(intensity).map(|d| d.sample(rng) as u64).unwrap_or(0);
            for _ in 0..n {
                let t: f64 = rng.random();
                let size = match *piece {
                    Piece::Atom { size, .. } => Some(size),
                    Piece::Power { alpha, lambda, lo, hi, .. } => {
                        let x = sample_power(alpha, lo, hi, rng.random());
                        (lambda == 0.0 || rng.random::<f64>() < (-lambda * (x - lo)).exp()).then_some(x)
                    }
                    Piece::Tail { k, lambda, rate, lo, hi, log_env, .. } => {
                        let x = lo + Exp::new(rate).expect("positive rate").sample(rng);
                        let accept = (k * x.ln() - (lambda - rate) * x - log_env).exp();
                        (x <= hi && rng.random::<f64>() < accept).then_some(x)
                    }
                };
                if let Some(x) = size {
                    out.push((t, self.sign * x));
                }
            }
        }
    }
}

/// Precomputed law of the truncated process for one `(triplet, δ, mode)`.
#[derive(Clone, Debug)]
pub struct PathSampler {
    samplers: Vec<JumpSampler>,
    drift: f64,
    sigma: f64,
    delta: f64,
    mode: SmallJumpMode,
}

/// Skeleton of one simulated path on `[0, 1]`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PathSkeleton {
    /// `(time, size)` for every jump with `|size| > δ`, time-ordered.
    pub jumps: Vec<(f64, f64)>,
    /// Values at `i / grid_n`, `i = 0..=grid_n`.
    pub grid: Vec<f64>,
    /// Left limits `X_{t-}` at the jump times.
    pub pre_jump: Vec<f64>,
}

impl PathSkeleton {
    /// Sup over grid values and both sides of every jump.
    pub fn monitored_sup(&self) -> f64 {
        let post = self.pre_jump.iter().zip(&self.jumps).map(|(x, (_, j))| x + j);
        self.grid.iter().copied().chain(self.pre_jump.iter().copied()).chain(post).fold(0.0, |m, x| m.max(x.abs()))
    }
}

fn default_delta(triplet: &LevyTriplet<f64>, eps: f64) -> f64 {
    let nearest_atom = triplet
        .components()
        .iter()
        .filter_map(|c| match c {
            MeasureComponent::Atom(a) if a.mass > 0.0 => Some(a.location.abs()),
            _ => None,
        })
        .fold(f64::INFINITY, f64::min);
    (eps / 10.0).min(nearest_atom / 2.0)
}

impl PathSampler {
    pub fn new(triplet: &LevyTriplet<f64>, delta: f64, mode: SmallJumpMode) -> Result<Self, SimulationError> {
        let report = triplet.validate();
        if !report.is_valid() {
            return Err(SimulationError::InvalidTriplet(report.to_string()));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(SimulationError::DeltaTooLarge { delta, limit: f64::NAN });
        }
        let mut samplers = Vec::new();
        for comp in triplet.components() {
            match comp {
                MeasureComponent::PowerLaw(p) => samplers.extend(JumpSampler::power_law(p, delta)),
                MeasureComponent::Atom(a) => {
                    if a.mass > 0.0 {
                        if a.location.abs() <= delta {
                            return Err(SimulationError::DeltaAboveAtom { delta, atom: a.location.abs() });
                        }
                        samplers.push(JumpSampler::atom(a.location, a.mass));
                    }
                }
                MeasureComponent::Numeric(_) => return Err(SimulationError::UnsupportedComponent),
            }
        }
        let small_var = match mode {
            SmallJumpMode::GaussianSubstitute => match abs_moment(triplet.components(), delta, 2.0, None) {
                Extended::Finite(v) => v,
                Extended::Infinite => return Err(SimulationError::InfiniteVariance),
            },
            SmallJumpMode::DriftOnly => 0.0,
        };
        Ok(Self {
            samplers,
            drift: truncated_drift(triplet, delta).value,
            sigma: (triplet.sigma2() + small_var).sqrt(),
            delta,
            mode,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn mode(&self) -> SmallJumpMode {
        self.mode
    }

    /// Drift of the simulated process between jumps.
    pub fn drift(&self) -> f64 {
        self.drift
    }

    /// Standard deviation per unit time of the simulated Brownian part.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Expected number of proposals per path (cost indicator).
    pub fn proposal_intensity(&self) -> f64 {
        self.samplers
            .iter()
            .flat_map(|s| &s.pieces)
            .map(|p| match p {
                Piece::Power { intensity, .. } | Piece::Tail { intensity, .. } | Piece::Atom { intensity, .. } => *intensity,
            })
            .sum()
    }

    fn jumps<R: Rng>(&self, rng: &mut R, buf: &mut Vec<(f64, f64)>) {
        buf.clear();
        for s in &self.samplers {
            s.sample(rng, buf);
        }
        buf.sort_by(|a, b| a.0.total_cmp(&b.0));
    }

    pub fn sample_path(&self, grid_n: usize, rng: &mut ChaCha8Rng) -> PathSkeleton {
        let mut jumps = Vec::new();
        self.jumps(rng, &mut jumps);
        let mut grid = Vec::with_capacity(grid_n + 1);
        let mut pre_jump = Vec::with_capacity(jumps.len());
        grid.push(0.0);
        let (mut x, mut t, mut j) = (0.0, 0.0, 0);
        for i in 1..=grid_n {
            let ti = i as f64 / grid_n as f64;
            while j < jumps.len() && jumps[j].0 <= ti {
                x = self.advance(x, jumps[j].0 - t, rng);
                t = jumps[j].0;
                pre_jump.push(x);
                x += jumps[j].1;
                j += 1;
            }
            x = self.advance(x, ti - t, rng);
            t = ti;
            grid.push(x);
        }
        PathSkeleton { jumps, grid, pre_jump }
    }

    #[inline]
    fn advance<R: Rng>(&self, x: f64, dt: f64, rng: &mut R) -> f64 {
        if dt <= 0.0 {
            return x;
        }
        let z: f64 = if self.sigma > 0.0 { rng.sample(StandardNormal) } else { 0.0 };
        x + self.drift * dt + self.sigma * dt.sqrt() * z
    }

    /// One Bernoulli trial of `{sup |X| <= eps}`.
    fn stays_inside(&self, eps: f64, grid_n: usize, bridge: bool, rng: &mut ChaCha8Rng, buf: &mut Vec<(f64, f64)>) -> bool {
        self.jumps(rng, buf);
        let bridge = bridge && self.sigma > 0.0;
        let mut survival = 1.0;
        let (mut x, mut t, mut j) = (0.0f64, 0.0f64, 0usize);
        let step = |x0: f64, dt: f64, rng: &mut ChaCha8Rng, survival: &mut f64| -> Option<f64> {
            let x1 = self.advance(x0, dt, rng);
            if x1.abs() > eps {
                return None;
            }
            if bridge && dt > 0.0 {
                *survival *= bridge_stay_probability(x0 + eps, x1 + eps, 2.0 * eps, self.sigma * self.sigma * dt);
            }
            Some(x1)
        };
        for i in 1..=grid_n {
            let ti = i as f64 / grid_n as f64;
            while j < buf.len() && buf[j].0 <= ti {
                let Some(pre) = step(x, buf[j].0 - t, rng, &mut survival) else { return false };
                t = buf[j].0;
                x = pre + buf[j].1;
                if x.abs() > eps {
                    return false;
                }
                j += 1;
            }
            let Some(next) = step(x, ti - t, rng, &mut survival) else { return false };
            x = next;
            t = ti;
        }
        !bridge || rng.random::<f64>() < survival
    }

    fn terminal<R: Rng>(&self, rng: &mut R, buf: &mut Vec<(f64, f64)>) -> f64 {
        self.jumps(rng, buf);
        let z: f64 = if self.sigma > 0.0 { rng.sample(StandardNormal) } else { 0.0 };
        self.drift + self.sigma * z + buf.iter().map(|j| j.1).sum::<f64>()
    }
}

/// Probability that a Brownian bridge from `x` to `y` (both in `(0, w)`) with
/// total variance `s2` stays inside `(0, w)`, by the method of images.
pub fn bridge_stay_probability(x: f64, y: f64, w: f64, s2: f64) -> f64 {
    let d = x.min(y).min(w - x).min(w - y);
    if d <= 0.0 {
        return 0.0;
    }
    // both endpoints far from the walls: crossing probability below e^{-72}
    if d * d > 36.0 * s2 {
        return 1.0;
    }
    let mut p = 0.0;
    for k in 0..=50i32 {
        let mut term = 0.0;
        let pair = [k, -k];
        for &kk in if k == 0 { &pair[..1] } else { &pair[..] } {
            let kw = kk as f64 * w;
            term += (-2.0 * kw * (kw + y - x) / s2).exp();
            term -= (-2.0 * (x + kw) * (y + kw) / s2).exp();
        }
        p += term;
        if k > 0 && term.abs() < 1e-17 {
            break;
        }
    }
    p.clamp(0.0, 1.0)
}

fn path_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

const BLOCK: usize = 4096;

fn check_config(cfg: &SimulationConfig, eps: f64) -> Result<(), SimulationError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(SimulationError::InvalidEps);
    }
    if cfg.n_paths < 100 {
        return Err(SimulationError::TooFewPaths(cfg.n_paths));
    }
    if cfg.grid_n < 16 {
        return Err(SimulationError::GridTooCoarse(cfg.grid_n));
    }
    Ok(())
}

fn resolve_delta(triplet: &LevyTriplet<f64>, eps: f64, cfg: &SimulationConfig) -> Result<f64, SimulationError> {
    let delta = cfg.delta.unwrap_or_else(|| default_delta(triplet, eps));
    if !(delta > 0.0 && delta < eps / 4.0) {
        return Err(SimulationError::DeltaTooLarge { delta, limit: eps / 4.0 });
    }
    Ok(delta)
}

/// Counts successes over paths `0..n` in fixed-size blocks; the sum is order-independent.
fn count_parallel(n: usize, f: impl Fn(std::ops::Range<usize>) -> usize + Sync) -> usize {
    (0..n.div_ceil(BLOCK)).into_par_iter().map(|b| f(b * BLOCK..((b + 1) * BLOCK).min(n))).sum()
}

/// Estimate of `P(sup_{t<=1} |X_t| <= eps)`.
pub fn estimate_small_ball(
    triplet: &LevyTriplet<f64>,
    eps: f64,
    cfg: &SimulationConfig,
) -> Result<SmallBallEstimate, SimulationError> {
    check_config(cfg, eps)?;
    let delta = resolve_delta(triplet, eps, cfg)?;
    let sampler = PathSampler::new(triplet, delta, cfg.small_jump_mode)?;
    let hits = count_parallel(cfg.n_paths, |range| {
        let mut buf = Vec::new();
        range
            .filter(|&i| {
                let mut rng = path_rng(cfg.seed, i as u64);
                sampler.stays_inside(eps, cfg.grid_n, cfg.bridge_correction, &mut rng, &mut buf)
            })
            .count()
    });
    let note = if cfg.bridge_correction && sampler.sigma > 0.0 { NOTE_BRIDGE } else { NOTE_GRID };
    Ok(SmallBallEstimate::from_count(eps, hits, cfg.n_paths, delta, cfg.small_jump_mode, note))
}

/// Estimate of `P(X_1 <= eps)` from the terminal value alone. For a subordinator
/// this equals the small-ball probability.
pub fn estimate_terminal_below(
    triplet: &LevyTriplet<f64>,
    eps: f64,
    cfg: &SimulationConfig,
) -> Result<SmallBallEstimate, SimulationError> {
    check_config(cfg, eps)?;
    let delta = resolve_delta(triplet, eps, cfg)?;
    let sampler = PathSampler::new(triplet, delta, cfg.small_jump_mode)?;
    let hits = count_parallel(cfg.n_paths, |range| {
        let mut buf = Vec::new();
        range.filter(|&i| sampler.terminal(&mut path_rng(cfg.seed, i as u64), &mut buf) <= eps).count()
    });
    Ok(SmallBallEstimate::from_count(eps, hits, cfg.n_paths, delta, cfg.small_jump_mode, NOTE_TERMINAL))
}

/// Terminal values `X_1` of `n` paths with truncation `delta`.
pub fn sample_terminal_values(
    triplet: &LevyTriplet<f64>,
    delta: f64,
    mode: SmallJumpMode,
    n: usize,
    seed: u64,
) -> Result<Vec<f64>, SimulationError> {
    let sampler = PathSampler::new(triplet, delta, mode)?;
    Ok((0..n)
        .into_par_iter()
        .map_init(Vec::new, |buf, i| sampler.terminal(&mut path_rng(seed, i as u64), buf))
        .collect())
}

/// Grid-and-jump monitored sups, in path order. Uses the same per-path streams as
/// [`estimate_small_ball`] but ignores bridge excursions.
pub fn path_sups(triplet: &LevyTriplet<f64>, eps: f64, cfg: &SimulationConfig) -> Result<Vec<f64>, SimulationError> {
    check_config(cfg, eps)?;
    let delta = resolve_delta(triplet, eps, cfg)?;
    let sampler = PathSampler::new(triplet, delta, cfg.small_jump_mode)?;
    Ok((0..cfg.n_paths)
        .into_par_iter()
        .map(|i| sampler.sample_path(cfg.grid_n, &mut path_rng(cfg.seed, i as u64)).monitored_sup())
        .collect())
}

/// One path skeleton for the path with index `index` under master seed `seed`.
pub fn sample_path(
    triplet: &LevyTriplet<f64>,
    delta: f64,
    mode: SmallJumpMode,
    grid_n: usize,
    seed: u64,
    index: u64,
) -> Result<PathSkeleton, SimulationError> {
    let sampler = PathSampler::new(triplet, delta, mode)?;
    Ok(sampler.sample_path(grid_n, &mut path_rng(seed, index)))
}

/// `P(sup_{t<=1} |B_t| <= eps)` for standard Brownian motion.
///
/// Uses the theta series for `eps <= 1` and the image series (in `erfc`) above.
pub fn brownian_small_ball_exact(eps: f64) -> f64 {
    use std::f64::consts::PI;
    if eps <= 0.0 {
        return 0.0;
    }
    if eps.is_infinite() {
        return 1.0;
    }
    if eps <= 1.0 {
        let mut sum = 0.0;
        for k in 0..10_000 {
            let m = (2 * k + 1) as f64;
            let term = (-m * m * PI * PI / (8.0 * eps * eps)).exp() / m;
            sum += if k % 2 == 0 { term } else { -term };
            if term < 1e-16 {
                break;
            }
        }
        4.0 / PI * sum
    } else {
        // P = Σ_k (-1)^k P((2k-1)ε < Z <= (2k+1)ε); the k = 0 term is 1 - erfc(ε/√2)
        let tail = |x: f64| 0.5 * erfc(x / std::f64::consts::SQRT_2);
        let mut p = 1.0 - 2.0 * tail(eps);
        for k in 1..10_000 {
            let m = (2 * k) as f64;
            let term = 2.0 * (tail((m - 1.0) * eps) - tail((m + 1.0) * eps));
            p += if k % 2 == 0 { term } else { -term };
            if term < 1e-16 {
                break;
            }
        }
        p.clamp(0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Side;

    fn cfg(n: usize) -> SimulationConfig {
        SimulationConfig { n_paths: n, grid_n: 64, ..Default::default() }
    }

    #[test]
    fn exact_series_values() {
        let first = 4.0 / std::f64::consts::PI * (-std::f64::consts::PI.powi(2) / 2.0).exp();
        assert!((brownian_small_ball_exact(0.5) - first).abs() < 1e-12);
        assert!((brownian_small_ball_exact(0.5) - 0.009157).abs() < 1e-6);
        assert!((brownian_small_ball_exact(1.0) - brownian_small_ball_exact(1.0 + 1e-12)).abs() < 1e-10);
        assert!(brownian_small_ball_exact(50.0) > 1.0 - 1e-15);
    }

    #[test]
    fn two_series_agree_at_the_switch() {
        use std::f64::consts::PI;
        // evaluate the theta series directly slightly above 1
        let eps: f64 = 1.3;
        let theta: f64 = (0..200)
            .map(|k| {
                let m = (2 * k + 1) as f64;
                (if k % 2 == 0 { 1.0 } else { -1.0 }) * (-m * m * PI * PI / (8.0 * eps * eps)).exp() / m
            })
            .sum::<f64>()
            * 4.0
            / PI;
        assert!((theta - brownian_small_ball_exact(eps)).abs() < 1e-13);
    }

    #[test]
    fn pure_drift_path_is_linear() {
        let t = LevyTriplet::gaussian(0.0, 1.0);
        let p = sample_path(&t, 0.01, SmallJumpMode::GaussianSubstitute, 16, 1, 0).unwrap();
        for (i, x) in p.grid.iter().enumerate() {
            assert!((x - i as f64 / 16.0).abs() < 1e-15);
        }
        assert!((p.monitored_sup() - 1.0).abs() < 1e-15);
        assert_eq!(estimate_small_ball(&t, 0.5, &cfg(200)).unwrap().p_hat, 0.0);
    }

    #[test]
    fn reproducible() {
        let t = LevyTriplet::new(vec![MeasureComponent::power_law(1.0, 0.5, Side::Positive)], 1.0, 0.0);
        let a = estimate_small_ball(&t, 1.0, &cfg(500)).unwrap();
        let b = estimate_small_ball(&t, 1.0, &cfg(500)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bridge_probability_limits() {
        assert_eq!(bridge_stay_probability(0.5, 0.5, 1.0, 1e-6), 1.0);
        // one barrier dominates: 1 - exp(-2 x y / s2)
        let p = bridge_stay_probability(0.05, 0.05, 1.0, 0.01);
        assert!((p - (1.0 - (-0.5f64).exp())).abs() < 1e-12);
        assert_eq!(bridge_stay_probability(0.0, 0.5, 1.0, 0.1), 0.0);
        let wide = bridge_stay_probability(0.5, 0.5, 1.0, 100.0);
        assert!((0.0..1e-10).contains(&wide));
    }

    #[test]
    fn tempered_sampler_intensity_matches_tail_mass() {
        // accepted jump count per path has mean ν(|x| > δ)
        let comp = TemperedPowerLaw::tempered(1.0, 0.0, 1.0, Side::Positive);
        let t = LevyTriplet::new(vec![MeasureComponent::PowerLaw(comp)], 0.0, 0.0);
        let s = PathSampler::new(&t, 1e-3, SmallJumpMode::DriftOnly).unwrap();
        let mut buf = Vec::new();
        let n = 20_000;
        let total: usize = (0..n)
            .map(|i| {
                s.jumps(&mut path_rng(7, i), &mut buf);
                buf.len()
            })
            .sum();
        let expect = crate::measure::tail_mass(t.components(), 1e-3).unwrap();
        let mean = total as f64 / n as f64;
        assert!((mean - expect).abs() < 4.0 * (expect / n as f64).sqrt(), "{mean} vs {expect}");
    }

    #[test]
    fn rejects_bad_configs() {
        let t = LevyTriplet::new(vec![MeasureComponent::atom(0.01, 1.0)], 0.0, 0.0);
        let c = SimulationConfig { delta: Some(0.02), ..cfg(100) };
        assert!(matches!(estimate_small_ball(&t, 0.1, &c), Err(SimulationError::DeltaAboveAtom { .. })));
        assert!(matches!(estimate_small_ball(&t, 0.1, &cfg(10)), Err(SimulationError::TooFewPaths(10))));
    }
}
