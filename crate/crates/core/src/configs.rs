//! Example configurations shipped with the crate, one per named family.

use crate::config::{ConfigError, TripletConfig};
use crate::model::LevyTriplet;

/// `(name, JSON text)` for every file under `examples/`.
pub const SHIPPED: &[(&str, &str)] = &[
    ("gamma", include_str!("../examples/gamma.json")),
    ("gamma_drift", include_str!("../examples/gamma_drift.json")),
    ("gaussian", include_str!("../examples/gaussian.json")),
    ("gaussian_drift", include_str!("../examples/gaussian_drift.json")),
    ("polynomial_alpha1", include_str!("../examples/polynomial_alpha1.json")),
    ("polynomial_alpha15", include_str!("../examples/polynomial_alpha15.json")),
    ("polynomial_half", include_str!("../examples/polynomial_half.json")),
    ("polynomial_half_drift", include_str!("../examples/polynomial_half_drift.json")),
    ("stable_sub_drift", include_str!("../examples/stable_sub_drift.json")),
    ("stable_sub_positive_drift", include_str!("../examples/stable_sub_positive_drift.json")),
    ("stable_subordinator", include_str!("../examples/stable_subordinator.json")),
    ("subordinated_bm", include_str!("../examples/subordinated_bm.json")),
    ("symmetric_atoms", include_str!("../examples/symmetric_atoms.json")),
    ("symmetric_stable", include_str!("../examples/symmetric_stable.json")),
    ("uniform_poisson", include_str!("../examples/uniform_poisson.json")),
    ("variance_gamma", include_str!("../examples/variance_gamma.json")),
];

pub fn shipped_config(name: &str) -> Option<&'static str> {
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn shipped_triplet(name: &str) -> Option<Result<LevyTriplet<f64>, ConfigError>> {
    shipped_config(name).map(|text| TripletConfig::from_json(text)?.to_triplet())
}

/// All shipped triplets, in name order.
pub fn shipped_triplets() -> Vec<(&'static str, LevyTriplet<f64>)> {
    SHIPPED
        .iter()
        .map(|(name, text)| {
            let t = TripletConfig::from_json(text).and_then(|c| c.to_triplet());
            (*name, t.unwrap_or_else(|e| panic!("shipped config {name} is invalid: {e}")))
        })
        .collect()
}
