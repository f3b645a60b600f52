//! Small-deviation asymptotics of real-valued Lévy processes.
//!
//! The core is generic over the scalar type `T: Real`; the aliases at the bottom fix `f64`.

// `!(x > 0)` is used on purpose so that NaN inputs take the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod measure;
pub mod model;
pub mod quad;
pub mod real;
pub mod roots;
pub mod special;
pub mod classify;
pub mod esscher;
pub mod bounds;
pub mod catalog;
pub mod simulate;
pub mod config;
pub mod configs;
pub mod selftest;

pub use bounds::{theorem15, BoundReport, BoundsError};
pub use catalog::{asymptotic_rate, CatalogRate, NamedFamily};
pub use classify::{classify, Classification, SdpReason};
pub use config::{load_triplet, ConfigError, TripletConfig};
pub use esscher::{solve_esscher, EsscherOutcome, EsscherSolution, NoRootReason};
pub use model::{LevyTriplet, MeasureComponent, RateExpression, Side, TemperedPowerLaw};
pub use real::Real;
pub use simulate::{estimate_small_ball, SimulationConfig, SmallBallEstimate, SmallJumpMode};

/// Double-precision triplet.
pub type Triplet = LevyTriplet<f64>;
pub type Component = MeasureComponent<f64>;
pub type PowerLaw = TemperedPowerLaw<f64>;
pub type Rate = RateExpression<f64>;
pub type Report = BoundReport<f64>;
pub type Solution = EsscherSolution<f64>;
