use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::json;
use smalldev::bounds::BoundsError;
use smalldev::catalog::{asymptotic_rate, CatalogRate, FamilyDrift, NamedFamily};
use smalldev::configs::shipped_config;
use smalldev::selftest::run_selftest;
use smalldev::simulate::{path_sups, SimulationError};
use smalldev::{
    classify as classify_triplet, estimate_small_ball, theorem15, Report, SimulationConfig, SmallBallEstimate,
    Triplet, TripletConfig,
};

use crate::table::{Cell, Table};
use crate::{BoundsArgs, ClassifyArgs, CliError, ConfigArg, Family, RateArgs, SelftestArgs, SimOptions, SimulateArgs, SweepArgs};

const BOUND_COLUMNS: [&str; 9] =
    ["eps", "N", "esscher_cost", "tilt", "fbar", "upper_exponent", "lower_exponent", "dominant", "tight"];
const SIM_COLUMNS: [&str; 7] = ["p_hat", "stderr", "neg_log_p_hat", "upper_95", "n_paths", "delta", "small_jump_mode"];

/// Reads a config file; a bare name that is not a file falls back to the shipped examples.
fn load(arg: &ConfigArg) -> Result<Triplet, CliError> {
    let path = Path::new(&arg.config);
    let cfg = if path.exists() {
        TripletConfig::from_path(path)
    } else if let Some(text) = shipped_config(arg.config.trim_end_matches(".json")) {
        TripletConfig::from_json(text)
    } else {
        return Err(CliError::Usage(format!("no config file or shipped example named {:?}", arg.config)));
    };
    let triplet = cfg.and_then(|c| c.to_triplet()).map_err(|e| CliError::Usage(e.to_string()))?;
    // only warnings can remain after a successful conversion
    eprint!("{}", triplet.validate());
    Ok(triplet)
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn classify(args: &ClassifyArgs) -> Result<(), CliError> {
    let t = load(&args.config)?;
    let c = classify_triplet(&t);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&c).expect("classification serializes"));
        return Ok(());
    }
    let reason = serde_json::to_value(c.sdp_reason).expect("reason serializes");
    println!("has_sdp={}", c.has_sdp);
    println!("sdp_reason={}", reason.as_str().unwrap_or_default());
    println!("type_i={}", c.is_type_i);
    match c.effective_drift {
        Some(d) => println!("effective_drift={}", num(d.value)),
        None => println!("effective_drift=undefined"),
    }
    println!("subordinator={}", c.is_subordinator);
    println!("neg_subordinator={}", c.is_neg_subordinator);
    println!("compound_poisson={}", c.is_compound_poisson);
    Ok(())
}

fn bound_error(eps: f64, e: BoundsError) -> CliError {
    match e {
        BoundsError::NoRoot(reason) => {
            let name = serde_json::to_value(reason).expect("reason serializes");
            CliError::Domain(format!("no Esscher root at eps = {eps} ({}): {}", name.as_str().unwrap_or_default(), reason.explain()))
        }
        other => CliError::Domain(format!("bounds at eps = {eps}: {other}")),
    }
}

fn bound_cells(r: &Report) -> Vec<Cell> {
    vec![
        r.eps.into(),
        r.tail_cost.into(),
        r.esscher_cost.into(),
        r.tilt_term.into(),
        r.oscillation_cost.into(),
        r.upper_exponent.into(),
        r.lower_exponent.into(),
        r.dominant.as_str().into(),
        r.tight.into(),
    ]
}

fn bound_reports(t: &Triplet, grid: &[f64]) -> Result<Vec<Report>, CliError> {
    grid.iter().map(|&eps| theorem15(t, eps).map_err(|e| bound_error(eps, e))).collect()
}

pub fn bounds(args: &BoundsArgs) -> Result<(), CliError> {
    let t = load(&args.config)?;
    let grid = args.eps.values().map_err(CliError::Usage)?;
    let mut table = Table::new(&BOUND_COLUMNS);
    for r in bound_reports(&t, &grid)? {
        table.push(bound_cells(&r));
    }
    let table = table.select(&args.output.columns).map_err(CliError::Usage)?;
    table.emit(args.output.out.as_deref())?;
    Ok(())
}

fn need(v: Option<f64>, flag: &str, family: Family) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --family {family:?}")))
}

fn family_of(a: &RateArgs) -> Result<NamedFamily<f64>, CliError> {
    let f = a.family;
    Ok(match f {
        Family::StableSubordinator => NamedFamily::StableSubordinatorDrift { alpha: need(a.alpha, "alpha", f)?, mu: a.mu },
        Family::Gamma => NamedFamily::GammaDrift { a: need(a.a, "a", f)?, b: need(a.b, "b", f)?, mu: a.mu },
        Family::Polynomial => NamedFamily::PolynomialMeasure {
            alpha1: need(a.alpha1, "alpha1", f)?,
            alpha2: need(a.alpha2, "alpha2", f)?,
            c1: need(a.c1, "C1", f)?,
            c2: need(a.c2, "C2", f)?,
            drift: match a.c {
                Some(c) => FamilyDrift::Effective(c),
                None => FamilyDrift::Compensated(a.drift.unwrap_or(0.0)),
            },
        },
        Family::VarianceGamma => NamedFamily::VarianceGamma {
            c1: need(a.c1, "C1", f)?,
            c2: need(a.c2, "C2", f)?,
            lambda1: need(a.lambda1, "lambda1", f)?,
            lambda2: need(a.lambda2, "lambda2", f)?,
        },
        Family::SubordinatedBm => NamedFamily::SubordinatedBm { gamma: need(a.gamma, "gamma", f)?, b_a: a.b_a },
        Family::CompoundPoisson => NamedFamily::CompoundPoissonNoDrift { total_mass: need(a.total_mass, "total-mass", f)? },
        Family::StrictlyStable => NamedFamily::StrictlyStable { alpha: need(a.alpha, "alpha", f)? },
    })
}

pub fn rate(args: &RateArgs) -> Result<(), CliError> {
    let family = family_of(args)?;
    let outcome = asymptotic_rate(&family).map_err(|e| CliError::Usage(e.to_string()))?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&json!({ "family": family, "result": outcome })).expect("serializes"));
    }
    match &outcome {
        CatalogRate::Rate(r) => {
            if !args.eps.is_empty() {
                let mut table = Table::new(&["eps", "rate"]);
                for &eps in &args.eps {
                    let v = r.eval(eps).map_err(|e| CliError::Usage(e.to_string()))?;
                    table.push(vec![eps.into(), v.into()]);
                }
                table.emit(None)?;
            } else if !args.json {
                println!("{r}");
                println!("mode={}", serde_json::to_value(r.mode).expect("serializes").as_str().unwrap_or_default());
                println!("regime={}", r.regime);
            }
            Ok(())
        }
        CatalogRate::PolynomialProbability { exponent, regime } => {
            if !args.json {
                println!("P(sup|X| <= eps) decays like eps^{exponent}; -log P ~ {exponent} * |log eps|");
                println!("regime={regime}");
            }
            Ok(())
        }
        CatalogRate::NoSdp { reason } => Err(CliError::Domain(format!("no small deviation property: {reason}"))),
        CatalogRate::Unsupported { reason } => Err(CliError::Domain(format!("not covered by the catalog: {reason}"))),
    }
}

fn sim_config(o: &SimOptions) -> SimulationConfig {
    SimulationConfig {
        n_paths: o.paths,
        grid_n: o.grid,
        delta: o.delta,
        small_jump_mode: o.mode.into(),
        seed: o.seed,
        bridge_correction: !o.no_bridge,
    }
}

fn sim_error(e: SimulationError) -> CliError {
    match e {
        SimulationError::UnsupportedComponent | SimulationError::InvalidTriplet(_) | SimulationError::InfiniteVariance => {
            CliError::Domain(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    }
}

fn sim_cells(s: &SmallBallEstimate) -> Vec<Cell> {
    vec![
        s.p_hat.into(),
        s.stderr.into(),
        (-s.p_hat.ln()).into(),
        s.upper_95().into(),
        s.n_paths.into(),
        s.delta.into(),
        s.small_jump_mode.as_str().into(),
    ]
}

pub fn simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let t = load(&args.config)?;
    let cfg = sim_config(&args.sim);
    let est = estimate_small_ball(&t, args.eps, &cfg).map_err(sim_error)?;
    let mut header = vec!["eps"];
    header.extend(SIM_COLUMNS);
    header.extend(["successes", "seed", "grid_n", "bias_note"]);
    let mut table = Table::new(&header);
    let mut row = vec![Cell::from(args.eps)];
    row.extend(sim_cells(&est));
    row.extend([est.successes.into(), Cell::Text(cfg.seed.to_string()), cfg.grid_n.into(), est.bias_note.into()]);
    table.push(row);
    table.select(&args.output.columns).map_err(CliError::Usage)?.emit(args.output.out.as_deref())?;
    if let Some(path) = &args.sups {
        let sups = path_sups(&t, args.eps, &cfg).map_err(sim_error)?;
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "sup")?;
        for s in sups {
            writeln!(w, "{}", num(s))?;
        }
        w.flush()?;
    }
    Ok(())
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let t = load(&args.config)?;
    let grid = args.eps.values().map_err(CliError::Usage)?;
    let reports = bound_reports(&t, &grid)?;
    let cfg = sim_config(&args.sim);
    let mut header = BOUND_COLUMNS.to_vec();
    header.extend(SIM_COLUMNS);
    let mut table = Table::new(&header);
    // the grid is decreasing, so the largest radii come first
    for (i, r) in reports.iter().enumerate() {
        let mut row = bound_cells(r);
        if i < args.simulate_top {
            let est = estimate_small_ball(&t, r.eps, &cfg).map_err(sim_error)?;
            row.extend(sim_cells(&est));
        } else {
            row.extend(std::iter::repeat_n(Cell::Empty, SIM_COLUMNS.len()));
        }
        table.push(row);
    }
    table.select(&args.output.columns).map_err(CliError::Usage)?.emit(args.output.out.as_deref())?;
    Ok(())
}

pub fn selftest(args: &SelftestArgs) -> Result<(), CliError> {
    let results = run_selftest();
    let failed = results.iter().filter(|r| !r.passed).count();
    for r in &results {
        if args.verbose || !r.passed {
            println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
        }
    }
    println!("selftest: {} checks, {} failed", results.len(), failed);
    if failed > 0 {
        return Err(CliError::Domain(format!("{failed} self-test checks failed")));
    }
    Ok(())
}
