use std::process::{Command, Output};

fn smalldev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smalldev")).args(args).env_remove("SMALLDEV_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Parses CSV output into the header and rows of fields.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect();
    (header, rows)
}

fn column(header: &[String], row: &[String], name: &str) -> f64 {
    let i = header.iter().position(|h| h == name).unwrap();
    row[i].parse().unwrap()
}

const EXAMPLES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/examples/");

#[test]
fn classify_stable_subordinator_with_negative_drift() {
    let o = smalldev(&["classify", &format!("{EXAMPLES}stable_sub_drift.json")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("has_sdp=true"));
    assert!(out.contains("subordinator=false"));
    assert!(out.contains("effective_drift=-1.0000000000000000e0"));

    let o = smalldev(&["classify", "stable_sub_positive_drift", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["has_sdp"], false);
    assert_eq!(v["is_subordinator"], true);
}

#[test]
fn bounds_row_for_symmetric_atoms() {
    let o = smalldev(&["bounds", &format!("{EXAMPLES}symmetric_atoms.json"), "--eps", "0.3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["eps", "N", "esscher_cost", "tilt", "fbar", "upper_exponent", "lower_exponent", "dominant", "tight"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(column(&h, &rows[0], "upper_exponent"), 5.0);
    assert_eq!(column(&h, &rows[0], "N"), 2.0);
    assert_eq!(rows[0][0], "2.9999999999999999e-1");
}

#[test]
fn csv_values_round_trip_exactly() {
    let o = smalldev(&["bounds", "stable_sub_drift", "--eps-start", "0.1", "--eps-stop", "1e-4", "--eps-count", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 4);
    let t = smalldev::configs::shipped_triplet("stable_sub_drift").unwrap().unwrap();
    for row in &rows {
        let eps = column(&h, row, "eps");
        let r = smalldev::theorem15(&t, eps).unwrap();
        assert_eq!(column(&h, row, "upper_exponent"), r.upper_exponent);
        assert_eq!(column(&h, row, "fbar"), r.oscillation_cost);
    }
}

#[test]
fn column_selection_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    let o = smalldev(&["bounds", "gaussian", "--eps", "0.5,0.25", "--columns", "upper_exponent,eps", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let (h, rows) = csv_rows(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(h, ["upper_exponent", "eps"]);
    assert_eq!(rows.len(), 2);
}

#[test]
fn rate_for_polynomial_measure() {
    let o = smalldev(&["rate", "--family", "polynomial", "--alpha1", "1", "--alpha2", "0.5", "--C1", "1", "--C2", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().next().unwrap(), "eps^-1 * |log eps| * loglog");

    let o = smalldev(&["rate", "--family", "strictly-stable", "--alpha", "1.5", "--eps", "0.01,0.001"]);
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["eps", "rate"]);
    assert!((column(&h, &rows[1], "rate") - 1e-3f64.powf(-1.5)).abs() < 1e-6);
}

#[test]
fn domain_errors_exit_one_with_the_reason() {
    let o = smalldev(&["bounds", "stable_sub_positive_drift", "--eps", "0.1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("subordinator"), "{}", stderr(&o));

    let o = smalldev(&["rate", "--family", "gamma", "--a", "1", "--b", "1", "--mu", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no small deviation property"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["bounds", "gaussian"],
        &["bounds", "gaussian", "--eps", "0.1,0.2"],
        &["bounds", "no_such_config", "--eps", "0.1"],
        &["rate", "--family", "polynomial", "--alpha1", "1"],
        &["simulate", "gaussian", "--eps", "0.5", "--paths", "10"],
        &["bounds", "gaussian", "--eps", "0.1", "--columns", "nope"],
    ] {
        let o = smalldev(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let o = Command::new(env!("CARGO_BIN_EXE_smalldev")).args(["selftest"]).env("SMALLDEV_THREADS", "0").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_is_deterministic_and_writes_sups() {
    let dir = tempfile::tempdir().unwrap();
    let sups = dir.path().join("sups.txt");
    let args = ["simulate", "symmetric_atoms", "--eps", "0.3", "--paths", "4000", "--grid", "32", "--seed", "7"];
    let mut with_sups = args.to_vec();
    with_sups.extend(["--sups", sups.to_str().unwrap()]);
    let a = smalldev(&with_sups);
    assert!(a.status.success(), "{}", stderr(&a));
    let b = Command::new(env!("CARGO_BIN_EXE_smalldev")).args(args).env("SMALLDEV_THREADS", "3").output().unwrap();
    assert_eq!(a.stdout, b.stdout);

    let (h, rows) = csv_rows(&stdout(&a));
    let p = column(&h, &rows[0], "p_hat");
    let se = column(&h, &rows[0], "stderr");
    assert!((p - (-2f64).exp()).abs() < 4.0 * se);

    let text = std::fs::read_to_string(&sups).unwrap();
    let values: Vec<f64> = text.lines().skip(1).map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 4000);
    // without Gaussian part the monitored sup decides the estimate exactly
    let inside = values.iter().filter(|&&s| s <= 0.3).count();
    assert_eq!(inside as f64 / 4000.0, p);
}

#[test]
fn sweep_joins_simulation_columns() {
    let o = smalldev(&["sweep", "symmetric_atoms", "--eps", "0.5,0.25,0.1", "--simulate-top", "1", "--paths", "1000", "--grid", "16"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 3);
    let p = h.iter().position(|c| c == "p_hat").unwrap();
    assert!(!rows[0][p].is_empty());
    assert!(rows[1][p].is_empty() && rows[2][p].is_empty());
    assert_eq!(column(&h, &rows[0], "eps"), 0.5);
}

#[test]
fn selftest_passes() {
    let o = smalldev(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains(", 0 failed"));
}
