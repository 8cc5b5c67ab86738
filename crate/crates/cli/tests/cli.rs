use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fluctent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fluctent")).args(args).output().expect("spawn fluctent")
}

fn write_state(dir: &Path, name: &str, dim_q: usize, dim_b: usize, amplitudes: &[(f64, f64)]) -> String {
    let path = dir.join(name);
    let pairs: Vec<[f64; 2]> = amplitudes.iter().map(|&(re, im)| [re, im]).collect();
    let body = serde_json::json!({ "dim_q": dim_q, "dim_b": dim_b, "amplitudes": pairs });
    std::fs::write(&path, body.to_string()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn analyze(state: &str) -> Value {
    let out = fluctent(&["analyze", "--state", state]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn analyze_bell_state() {
    let dir = TempDir::new().unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let state = write_state(dir.path(), "bell.json", 2, 2, &[(h, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, h)]);
    let v = analyze(&state);
    assert!((v["report"]["total"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["measures"]["purity"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["measures"]["von_neumann"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-12);
    assert_eq!(v["manifest"]["command"], "analyze");
    assert!(v["residuals"]["main_relation"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn analyze_product_state() {
    let dir = TempDir::new().unwrap();
    let state = write_state(dir.path(), "product.json", 2, 3, &[(0.0, 0.0), (0.0, 1.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
    let v = analyze(&state);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["report"]["total"].as_f64().unwrap(), 0.0);
    assert_eq!(v["measures"]["concurrence"].as_f64().unwrap(), 0.0);
}

#[test]
fn analyze_rank_three_uniform() {
    let dir = TempDir::new().unwrap();
    let a = 1.0 / 3f64.sqrt();
    let mut amplitudes = vec![(0.0, 0.0); 9];
    for j in 0..3 {
        amplitudes[j * 3 + j] = (a, 0.0);
    }
    let v = analyze(&write_state(dir.path(), "r3.json", 3, 3, &amplitudes));
    assert!((v["report"]["total"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-12);
    assert_eq!(v["report"]["per_component"].as_array().unwrap().len(), 2);
}

#[test]
fn analyze_writes_file_and_warns_on_renormalization() {
    let dir = TempDir::new().unwrap();
    let state = write_state(dir.path(), "s.json", 1, 2, &[(1.0 + 5e-5, 0.0), (0.0, 0.0)]);
    let out_path = dir.path().join("report.json");
    let out = fluctent(&["analyze", "--state", &state, "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("renormalized"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["manifest"]["output"], out_path.to_str().unwrap());
}

#[test]
fn analyze_input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let unnormalized = write_state(dir.path(), "bad.json", 1, 2, &[(1.1, 0.0), (0.0, 0.0)]);
    let out = fluctent(&["analyze", "--state", &unnormalized]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not normalized"));

    let good = write_state(dir.path(), "good.json", 1, 2, &[(1.0, 0.0), (0.0, 0.0)]);
    assert_eq!(fluctent(&["analyze", "--state", &good, "--dim-q", "2"]).status.code(), Some(2));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(fluctent(&["analyze", "--state", garbage.to_str().unwrap()]).status.code(), Some(2));

    let missing = dir.path().join("missing.json");
    assert_eq!(fluctent(&["analyze", "--state", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn free_fermion_table() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ff.csv");
    let status = fluctent(&["free-fermion", "--nu", "0.25,0.75,0.5", "--m-max", "3", "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    let rows = read_csv(&out);
    assert_eq!(rows[0], ["nu", "M", "S_L", "purity"]);
    assert_eq!(rows.len(), 1 + 9);
    let entropy = |row: &Vec<String>| row[2].parse::<f64>().unwrap();
    // sorted by filling: 0.25 (rows 1..=3), 0.5 (4..=6), 0.75 (7..=9)
    for m in 0..3 {
        assert!((entropy(&rows[1 + m]) - entropy(&rows[7 + m])).abs() <= 1e-10);
    }
    assert!(entropy(&rows[4]) < entropy(&rows[5]) && entropy(&rows[5]) < entropy(&rows[6]));
    assert!(std::fs::read_to_string(&out).unwrap().ends_with('\n'));

    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ff.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "free-fermion");
    assert_eq!(manifest["parameters"]["m_max"], 3);
}

#[test]
fn free_fermion_rejects_bad_filling() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ff.csv");
    let result = fluctent(&["free-fermion", "--nu", "1.5", "--m-max", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn aklt_table_with_oracle() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("aklt.csv");
    assert!(fluctent(&["aklt", "--l-max", "8", "--with-oracle", "--out", out.to_str().unwrap()]).status.success());
    let rows = read_csv(&out);
    assert_eq!(rows[0].last().unwrap(), "oracle_max_dev");
    assert_eq!(rows[1][4].parse::<f64>().unwrap(), 0.0);
    assert!((rows[1][5].parse::<f64>().unwrap() - 4.0 / 3.0).abs() < 1e-15);
    for row in &rows[1..] {
        assert!(row[7].parse::<f64>().unwrap() <= 1e-10);
    }
}

#[test]
fn aklt_table_without_oracle() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("aklt.csv");
    assert!(fluctent(&["aklt", "--l-max", "20", "--out", out.to_str().unwrap()]).status.success());
    let rows = read_csv(&out);
    assert_eq!(rows[0].len(), 7);
    assert!((rows[20][6].parse::<f64>().unwrap() - 0.25).abs() <= 1e-14);
    assert_eq!(fluctent(&["aklt", "--l-max", "13", "--with-oracle", "--out", out.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reruns_reproduce_tables() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t.csv");
    let run = || {
        assert!(fluctent(&["free-fermion", "--nu", "0.3", "--m-max", "12", "--out", out.to_str().unwrap()]).status.success());
        (std::fs::read(&out).unwrap(), std::fs::read(dir.path().join("t.csv.manifest.json")).unwrap())
    };
    assert_eq!(run(), run());
}

#[test]
fn validate_summary() {
    let out = fluctent(&["validate", "--seed", "7", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["manifest"]["seed"], 7);
    let main = v["properties"].as_array().unwrap().iter().find(|p| p["name"] == "main_relation").unwrap();
    assert!(main["max_residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fluctent(&[]).status.code(), Some(2));
    assert_eq!(fluctent(&["validate", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(fluctent(&["aklt", "-l", "3"]).status.code(), Some(2));
    assert_eq!(fluctent(&["--help"]).status.code(), Some(0));
}
