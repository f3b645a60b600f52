//! Radius grids given either as an explicit list or as a geometric range.

use clap::Args;

#[derive(Args, Debug, Clone, Default)]
pub struct EpsArgs {
    /// Radii, comma separated or repeated; must be strictly decreasing.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with_all = ["eps_start", "eps_stop", "eps_count"])]
    pub eps: Vec<f64>,
    /// First (largest) radius of a geometric range.
    #[arg(long, requires_all = ["eps_stop", "eps_count"])]
    pub eps_start: Option<f64>,
    /// Last (smallest) radius of a geometric range.
    #[arg(long, requires_all = ["eps_start", "eps_count"])]
    pub eps_stop: Option<f64>,
    /// Number of points in the geometric range.
    #[arg(long, requires_all = ["eps_start", "eps_stop"])]
    pub eps_count: Option<usize>,
}

impl EpsArgs {
    /// The grid, validated: nonempty, positive, finite and strictly decreasing.
    pub fn values(&self) -> Result<Vec<f64>, String> {
        let values = match (self.eps_start, self.eps_stop, self.eps_count) {
            (Some(start), Some(stop), Some(count)) => geometric(start, stop, count)?,
            _ => self.eps.clone(),
        };
        if values.is_empty() {
            return Err("give --eps or --eps-start/--eps-stop/--eps-count".into());
        }
        if let Some(bad) = values.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
            return Err(format!("radius {bad} is not a positive finite number"));
        }
        if values.windows(2).any(|w| w[1] >= w[0]) {
            return Err("radii must be strictly decreasing".into());
        }
        Ok(values)
    }
}

fn geometric(start: f64, stop: f64, count: usize) -> Result<Vec<f64>, String> {
    if count == 0 {
        return Err("--eps-count must be at least 1".into());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    if !(start > 0.0 && stop > 0.0) {
        return Err("geometric range needs positive endpoints".into());
    }
    let ratio = (stop / start).ln() / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { stop } else { start * (ratio * i as f64).exp() })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_hits_both_ends() {
        let args = EpsArgs { eps_start: Some(0.1), eps_stop: Some(1e-4), eps_count: Some(4), ..Default::default() };
        let v = args.values().unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[3], 1e-4);
        assert!((v[1] - 0.01).abs() < 1e-15);
    }

    #[test]
    fn rejects_unordered_lists() {
        let args = EpsArgs { eps: vec![0.1, 0.2], ..Default::default() };
        assert!(args.values().is_err());
        let args = EpsArgs { eps: vec![0.1, -0.2], ..Default::default() };
        assert!(args.values().is_err());
        let args = EpsArgs { eps_start: Some(1e-3), eps_stop: Some(0.1), eps_count: Some(3), ..Default::default() };
        assert!(args.values().is_err());
    }
}
