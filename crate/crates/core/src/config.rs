//! JSON triplet configuration.
//!
//! ```json
//! {
//!   "name": "stable_sub_drift",
//!   "sigma2": 0.0,
//!   "effective_drift": -1.0,
//!   "components": [
//!     { "kind": "tempered_power_law", "C": 1.0, "alpha": 0.5, "lambda": 0.0,
//!       "side": "positive", "cutoff": "inf" },
//!     { "kind": "atom", "location": 1.0, "mass": 2.0 }
//!   ]
//! }
//! ```
//!
//! Exactly one of `b` (drift under the `1_{|x|<=1}` compensation) and
//! `effective_drift` may be given; neither means `b = 0`. For power laws `lambda`
//! defaults to 0, `cutoff` to 1, and `side` may be `"both"` to add the mirror image.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{LevyTriplet, MeasureComponent, Side, TemperedPowerLaw};

#[derive(Clone, Copy, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Cutoff {
    Finite(f64),
    Named(InfinityName),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub enum InfinityName {
    #[serde(rename = "inf")]
    Inf,
}

impl Cutoff {
    fn value(self) -> f64 {
        match self {
            Cutoff::Finite(r) => r,
            Cutoff::Named(InfinityName::Inf) => f64::INFINITY,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSpec {
    Positive,
    Negative,
    Both,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComponentSpec {
    TemperedPowerLaw {
        #[serde(rename = "C")]
        c: f64,
        alpha: f64,
        #[serde(default)]
        lambda: f64,
        side: SideSpec,
        #[serde(default = "default_cutoff")]
        cutoff: Cutoff,
    },
    Atom {
        location: f64,
        mass: f64,
    },
}

fn default_cutoff() -> Cutoff {
    Cutoff::Finite(1.0)
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TripletConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default)]
    pub sigma2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective_drift: Option<f64>,
    #[serde(default)]
    pub components: Vec<ComponentSpec>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("give either \"b\" or \"effective_drift\", not both")]
    BothDrifts,
    #[error("invalid triplet:\n{0}")]
    Invalid(String),
}

impl TripletConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    /// Builds and validates the triplet; warnings are allowed, errors are not.
    pub fn to_triplet(&self) -> Result<LevyTriplet<f64>, ConfigError> {
        let mut comps = Vec::new();
        for spec in &self.components {
            match *spec {
                ComponentSpec::TemperedPowerLaw { c, alpha, lambda, side, cutoff } => {
                    let base = TemperedPowerLaw { c, alpha, lambda, side: Side::Positive, cutoff: cutoff.value() };
                    let sides: &[Side] = match side {
                        SideSpec::Positive => &[Side::Positive],
                        SideSpec::Negative => &[Side::Negative],
                        SideSpec::Both => &[Side::Positive, Side::Negative],
                    };
                    comps.extend(sides.iter().map(|&s| MeasureComponent::PowerLaw(TemperedPowerLaw { side: s, ..base })));
                }
                ComponentSpec::Atom { location, mass } => comps.push(MeasureComponent::atom(location, mass)),
            }
        }
        let triplet = match (self.b, self.effective_drift) {
            (Some(_), Some(_)) => return Err(ConfigError::BothDrifts),
            (_, Some(c)) => LevyTriplet::with_effective_drift(comps, self.sigma2, c),
            (b, None) => LevyTriplet::new(comps, self.sigma2, b.unwrap_or(0.0)),
        };
        let report = triplet.validate();
        if !report.is_valid() {
            return Err(ConfigError::Invalid(report.to_string()));
        }
        Ok(triplet)
    }
}

/// Reads and validates a triplet from a JSON file.
pub fn load_triplet(path: impl AsRef<Path>) -> Result<LevyTriplet<f64>, ConfigError> {
    TripletConfig::from_path(path)?.to_triplet()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_schema() {
        let cfg = TripletConfig::from_json(
            r#"{"sigma2": 0.5, "b": 1.0, "components": [
                {"kind": "tempered_power_law", "C": 2, "alpha": 0.5, "side": "both"},
                {"kind": "tempered_power_law", "C": 1, "alpha": 0, "lambda": 1, "side": "positive", "cutoff": "inf"},
                {"kind": "atom", "location": -0.3, "mass": 5}]}"#,
        )
        .unwrap();
        let t = cfg.to_triplet().unwrap();
        assert_eq!(t.components().len(), 4);
        assert_eq!(t.b(), 1.0);
        match &t.components()[2] {
            MeasureComponent::PowerLaw(p) => assert!(p.cutoff.is_infinite() && p.lambda == 1.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            TripletConfig::from_json(r#"{"b": 1, "effective_drift": 0}"#).unwrap().to_triplet(),
            Err(ConfigError::BothDrifts)
        ));
        assert!(TripletConfig::from_json(r#"{"components": [{"kind": "gaussian"}]}"#).is_err());
        assert!(TripletConfig::from_json(r#"{"sigma": 1}"#).is_err());
        let bad = r#"{"components": [{"kind": "tempered_power_law", "C": 1, "alpha": 2.5, "side": "positive"}]}"#;
        assert!(matches!(TripletConfig::from_json(bad).unwrap().to_triplet(), Err(ConfigError::Invalid(_))));
    }

    #[test]
    fn round_trips() {
        let text = r#"{"sigma2":0.0,"effective_drift":-1.0,"components":[{"kind":"tempered_power_law","C":1.0,"alpha":0.5,"lambda":0.0,"side":"positive","cutoff":"inf"}]}"#;
        let cfg = TripletConfig::from_json(text).unwrap();
        assert_eq!(serde_json::to_string(&cfg).unwrap(), text);
    }
}
