use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn randproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_randproj")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn missing_seed_is_a_config_error() {
    let out = randproj(&["slln", "--d", "2", "--n", "50"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed"));
}

#[test]
fn config_errors_exit_with_two() {
    for args in [
        &["rate", "--nu", "cauchy", "--seed", "1"][..],
        &["intrinsic", "--d", "2", "--k", "3", "--n", "10", "--seed", "1"],
        &["slln", "--n", "10", "--trials", "0", "--seed", "1"],
        &["ldp-check", "--nu", "gaussian", "--n", "10", "--seed", "1"],
        &["ldp-check", "--nu", "gaussian", "--region", "half:1:0.5", "--n", "10", "--samples", "10", "--seed", "1"],
        &["project", "--x", "1,2", "--n", "3", "--seed", "1"],
        &["slln", "--bogus"],
    ] {
        assert_eq!(randproj(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn enumeration_beyond_budget_exits_with_three() {
    let out = randproj(&[
        "ldp-check", "--nu", "rademacher", "--region", "half:1:0.5", "--n-list", "40",
        "--estimators", "exact_enum", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = randproj(&["intrinsic", "--d", "2", "--k", "2", "--n", "5000", "--trials", "1", "--method", "exact", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_config_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"seed": 1, "n": 50, "trails": 3}"#).unwrap();
    let out = randproj(&["slln", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"command": "slln", "seed": 5, "d": 2, "n_list": [60], "trials": 4}"#).unwrap();
    let text = stdout(&randproj(&["slln", "--config", path.to_str().unwrap(), "--trials", "2"]));
    let (_, rows) = table(&text);
    assert_eq!(rows.len(), 3);
    assert!(text.contains(r#""trials":2"#) && text.contains(r#""seed":5"#));
    let out = randproj(&["rate", "--config", path.to_str().unwrap(), "--nu", "gaussian"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn slln_rows_and_medians() {
    let text = stdout(&randproj(&["slln", "--d", "2", "--n-list", "250,1000,4000", "--trials", "20", "--seed", "7"]));
    let (header, rows) = table(&text);
    assert_eq!(header, ["row_type", "n", "trial", "frame_seed", "hausdorff"]);
    assert_eq!(rows.len(), 63);
    assert_eq!(rows.iter().filter(|r| r[0] == "trial").count(), 60);
    let medians: Vec<f64> = rows.iter().filter(|r| r[0] == "median").map(|r| num(&r[4])).collect();
    assert_eq!(medians.len(), 3);
    assert!(medians[0] > medians[1] && medians[1] > medians[2], "{medians:?}");
    assert!(text.lines().any(|l| l.starts_with("# config: ")));
}

#[test]
fn slln_single_trial_has_one_row() {
    let (_, rows) = table(&stdout(&randproj(&["slln", "--n", "250", "--trials", "1", "--seed", "3"])));
    assert_eq!(rows.len(), 1);
    assert!(num(&rows[0][4]).is_finite());
}

#[test]
fn gaussian_rate_table() {
    let (header, rows) = table(&stdout(&randproj(&["rate", "--nu", "gaussian", "--seed", "1"])));
    assert_eq!(header, ["u", "psi_star", "finite_flag"]);
    assert_eq!(rows.len(), 200);
    for r in &rows {
        let u = num(&r[0]);
        assert!((num(&r[1]) - u * u / 2.0).abs() < 1e-8);
        assert_eq!(r[2], "true");
    }
}

#[test]
fn rademacher_rate_table_is_infinite_past_the_slope() {
    let rho = (2.0 / std::f64::consts::PI).sqrt();
    let (_, rows) = table(&stdout(&randproj(&["rate", "--nu", "rademacher", "--seed", "1"])));
    let beyond: Vec<_> = rows.iter().filter(|r| num(&r[0]) > rho + 1e-6).collect();
    assert!(!beyond.is_empty());
    assert!(beyond.iter().all(|r| r[1] == "inf" && r[2] == "false"));
}

#[test]
fn uniform_boundary_is_infinite() {
    let text = stdout(&randproj(&["rate", "--nu", "uniform", "--seed", "1", "--points", "10"]));
    assert!(text.lines().any(|l| l == "# boundary_value: inf"), "{text}");
    let json: Value = serde_json::from_str(&stdout(&randproj(&[
        "rate", "--nu", "uniform", "--seed", "1", "--points", "10", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(json["boundary_value"], "inf");
    assert_eq!(json["meta"]["command"], "rate");
}

#[test]
fn discrete_law_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let law = dir.path().join("law.json");
    std::fs::write(&law, r#"{"atoms":[{"x":-1,"p":0.25},{"x":0,"p":0.5},{"x":1,"p":0.25}]}"#).unwrap();
    let nu = format!("discrete:{}", law.display());
    let text = stdout(&randproj(&["rate", "--nu", &nu, "--seed", "1", "--points", "5"]));
    let boundary = text.lines().find_map(|l| l.strip_prefix("# boundary_value: ")).unwrap();
    assert!((num(boundary) - 4f64.ln()).abs() < 0.01);
    std::fs::write(&law, r#"{"atoms":[{"x":-1,"p":0.3},{"x":1,"p":0.3}]}"#).unwrap();
    assert_eq!(randproj(&["rate", "--nu", &nu, "--seed", "1"]).status.code(), Some(2));
}

#[test]
fn ldp_exact_scan_json() {
    let json: Value = serde_json::from_str(&stdout(&randproj(&[
        "ldp-check", "--nu", "rademacher", "--region", "half:1:0.5", "--n-list", "10,14,18",
        "--estimators", "exact_enum", "--seed", "4", "--format", "json",
    ])))
    .unwrap();
    for key in ["nu", "d", "region", "theoretical_rate", "rows"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["estimator"] == "exact_enum"));
    assert_eq!(rows[2]["samples_or_enum"], 1 << 18);
}

#[test]
fn ldp_csv_columns_and_unreliable_rows() {
    let text = stdout(&randproj(&[
        "ldp-check", "--nu", "gaussian", "--region", "half:1:2.0", "--n-list", "50",
        "--estimators", "mc_uniform,mc_gaussian", "--samples", "20000", "--seed", "2", "--trials", "3",
    ]));
    let (header, rows) = table(&text);
    assert_eq!(&header[..6], ["n", "estimator", "mu_hat", "empirical_rate", "std_err", "reliable"]);
    assert_eq!(rows.len(), 6 + 2);
    assert!(rows.iter().all(|r| r[5] == "false" && r[3] == "inf"));
    let target = text.lines().find_map(|l| l.strip_prefix("# theoretical_rate: ")).unwrap();
    assert!((num(target) - 2.0).abs() < 1e-8);
}

#[test]
fn intrinsic_limit_constant() {
    let text = stdout(&randproj(&["intrinsic", "--d", "2", "--k", "1", "--n", "100", "--trials", "2", "--seed", "1"]));
    let limit = text.lines().find_map(|l| l.strip_prefix("# limit_constant: ")).unwrap();
    assert!((num(limit) - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-10);
    let (_, rows) = table(&text);
    assert_eq!(rows.iter().map(|r| r[0].as_str()).collect::<Vec<_>>(), ["trial", "trial", "median", "limit"]);
}

#[test]
fn intrinsic_falls_back_to_sampling() {
    let (_, rows) = table(&stdout(&randproj(&[
        "intrinsic", "--d", "3", "--k", "3", "--n", "600", "--trials", "1", "--samples", "2000", "--seed", "1",
    ])));
    assert_eq!(rows[0][4], "mc");
    assert!(num(&rows[0][6]) > 0.0);
}

#[test]
fn project_prints_both_projections() {
    let (header, rows) = table(&stdout(&randproj(&["project", "--d", "2", "--x", "1,-2,3,0.5", "--seed", "5"])));
    assert_eq!(header, ["coordinate", "uniform", "gaussian"]);
    assert_eq!(rows.len(), 2);
}

fn rerun_is_identical(args: &[&str], out: &Path) {
    let out_str = out.to_str().unwrap();
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--out", out_str]);
    assert!(randproj(&full).status.success(), "{args:?}");
    let first = std::fs::read(out).unwrap();
    std::fs::remove_file(out).unwrap();
    assert!(randproj(&full).status.success());
    assert_eq!(first, std::fs::read(out).unwrap(), "{args:?}");
}

#[test]
fn every_command_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    for args in [
        &["slln", "--d", "3", "--n-list", "40,80", "--trials", "3", "--seed", "9"][..],
        &["rate", "--nu", "rademacher", "--seed", "9", "--points", "20", "--format", "json"],
        &["ldp-check", "--nu", "uniform", "--region", "half:1,1:0.1", "--n-list", "20,30", "--samples", "70000",
            "--estimators", "mc_uniform,mc_gaussian", "--trials", "2", "--seed", "9"],
        &["intrinsic", "--d", "2", "--k", "2", "--n", "60", "--trials", "3", "--method", "mc", "--samples", "500", "--seed", "9"],
        &["project", "--d", "3", "--x", "1,2,3,4,5", "--seed", "9", "--format", "json"],
    ] {
        rerun_is_identical(args, &out);
    }
}
