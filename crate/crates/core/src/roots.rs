//! Safeguarded Newton iteration for increasing functions on a bracket.

use thiserror::Error;

use crate::real::{lit, Real};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("bracket does not change sign")]
    NoSignChange,
    #[error("bisection cap of {cap} steps exceeded (last iterate {last}, residual {residual})")]
    IterationCap { cap: usize, last: f64, residual: f64 },
}

#[derive(Clone, Copy, Debug)]
pub struct RootOptions<T> {
    /// Stop once `|f(x)| <= f_tol`.
    pub f_tol: T,
    pub max_bisections: usize,
    pub max_iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root<T> {
    pub x: T,
    pub fx: T,
    pub iterations: usize,
    pub bisections: usize,
    /// The bracket collapsed to adjacent floats before `f_tol` was met.
    pub collapsed: bool,
}

/// Finds the zero of a nondecreasing `f` inside `[lo, hi]` with `f(lo) <= 0 <= f(hi)`.
///
/// `fdf` returns `(f(x), f'(x))`. Newton steps that leave the current bracket,
/// hit a non-finite value or fail to halve the step are replaced by bisection.
pub fn newton_bisect<T, F>(mut fdf: F, mut lo: T, mut hi: T, opts: &RootOptions<T>) -> Result<Root<T>, RootError>
where
    T: Real,
    F: FnMut(T) -> (T, T),
{
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let half = lit::<T>(0.5);
    let mut x = half * (lo + hi);
    let mut step_old = hi - lo;
    let mut step = step_old;
    let mut bisections = 0usize;
    let mut best = (x, T::infinity());
    for it in 0..opts.max_iterations {
        let (f, df) = fdf(x);
        if f.is_nan() {
            return Err(RootError::NoSignChange);
        }
        if f.abs() < best.1.abs() {
            best = (x, f);
        }
        if f.abs() <= opts.f_tol {
            return Ok(Root { x, fx: f, iterations: it + 1, bisections, collapsed: false });
        }
        if f < T::zero() {
            lo = x;
        } else {
            hi = x;
        }
        let newton = if df.is_finite() && df > T::zero() && f.is_finite() {
            Some(x - f / df)
        } else {
            None
        };
        let accept = match newton {
            Some(xn) => xn > lo && xn < hi && (f / df).abs() * lit(2.0) <= step_old.abs(),
            None => false,
        };
        step_old = step;
        if accept {
            let xn = newton.unwrap_or(x);
            step = x - xn;
            x = xn;
        } else {
            bisections += 1;
            if bisections > opts.max_bisections {
                return Err(RootError::IterationCap {
                    cap: opts.max_bisections,
                    last: best.0.to_f64().unwrap_or(f64::NAN),
                    residual: best.1.to_f64().unwrap_or(f64::NAN),
                });
            }
            let mid = half * (lo + hi);
            step = x - mid;
            x = mid;
        }
        if x <= lo || x >= hi || hi - lo <= T::epsilon() * lit::<T>(4.0) * x.abs().max(T::min_positive_value()) {
            let (fx, _) = fdf(x);
            if fx.abs() < best.1.abs() {
                best = (x, fx);
            }
            return Ok(Root {
                x: best.0,
                fx: best.1,
                iterations: it + 1,
                bisections,
                collapsed: best.1.abs() > opts.f_tol,
            });
        }
    }
    Err(RootError::IterationCap {
        cap: opts.max_iterations,
        last: best.0.to_f64().unwrap_or(f64::NAN),
        residual: best.1.to_f64().unwrap_or(f64::NAN),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> RootOptions<f64> {
        RootOptions { f_tol: 1e-13, max_bisections: 10_000, max_iterations: 20_000 }
    }

    #[test]
    fn cubic_root() {
        let r = newton_bisect(|x: f64| (x * x * x - 2.0, 3.0 * x * x), 0.0, 4.0, &opts()).unwrap();
        assert!((r.x - 2f64.cbrt()).abs() < 1e-12);
    }

    #[test]
    fn flat_function_falls_back_to_bisection() {
        // very flat near the root: Newton alone overshoots
        let f = |x: f64| (x.powi(9), 9.0 * x.powi(8));
        let r = newton_bisect(f, -1.0, 3.0, &RootOptions { f_tol: 1e-60, ..opts() }).unwrap();
        assert!(r.x.abs() < 1e-6);
    }

    #[test]
    fn exponential_growth() {
        let r = newton_bisect(|x: f64| (x.exp() - 1e6, x.exp()), -50.0, 50.0, &RootOptions { f_tol: 1e-6, ..opts() })
            .unwrap();
        assert!((r.x - 1e6_f64.ln()).abs() < 1e-10);
    }
}
