//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar the analytic machinery is generic over (`f32`, `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Largest exponent `z` for which `exp(z)` stays comfortably finite in `T`.
#[inline]
pub fn overflow_limit<T: Real>() -> T {
    T::max_value().ln() - lit(8.0)
}

/// `e^z - 1 - z`, accurate for small `|z|`.
pub fn exp_m1_m<T: Real>(z: T) -> T {
    if z.abs() < lit(0.5) {
        // sum_{n>=2} z^n / n!
        let mut term = z * z / lit(2.0);
        let mut sum = term;
        let mut n = 2.0;
        loop {
            n += 1.0;
            term = term * z / lit(n);
            sum = sum + term;
            if term.abs() <= T::epsilon() * sum.abs() {
                break;
            }
        }
        sum
    } else {
        z.exp_m1() - z
    }
}
