//! Integration tests for the `szccs` binary: round trips, exit codes,
//! determinism, and artifact formats.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_szccs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_set(dir: &Path, name: &str, family: &str, params: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    let o = run(&[
        "generate",
        family,
        "--params",
        params,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "generate {family} failed: {:?}", o);
    path
}

#[test]
fn generate_verify_roundtrip_passes_at_design_zone() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path(), "t2.json", "theorem2", r#"{"q":2,"m":4}"#);
    let o = run(&["verify", set.to_str().unwrap(), "--z", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["report"]["pass"], true);
    assert_eq!(doc["report"]["optimal"], true);
    assert_eq!(doc["report"]["exact"], true);
}

#[test]
fn verify_beyond_zone_fails_with_exit_one_and_shift_four_violation() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path(), "t2.json", "theorem2", r#"{"q":2,"m":4}"#);
    let o = run(&["verify", set.to_str().unwrap(), "--z", "4"]);
    assert_eq!(code(&o), 1);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["report"]["pass"], false);
    assert_eq!(doc["report"]["max_z"], 3);
    let shifts: Vec<i64> = doc["report"]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["shift"].as_i64().unwrap())
        .collect();
    assert!(shifts.contains(&4), "expected a violation at u=4: {shifts:?}");
}

#[test]
fn generate_rejects_odd_modulus_with_exit_two() {
    let o = run(&["generate", "theorem2", "--params", r#"{"q":3,"m":4}"#]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("even"), "stderr should name the constraint: {err}");
}

#[test]
fn verify_rejects_empty_file_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(&path, "").unwrap();
    let o = run(&["verify", path.to_str().unwrap(), "--z", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unknown_family_exits_two() {
    let o = run(&["generate", "nonesuch"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn corr_emits_csv_profile_with_energy_peak() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path(), "t2.json", "theorem2", r#"{"q":2,"m":4}"#);
    let o = run(&[
        "corr",
        set.to_str().unwrap(),
        "--code-a",
        "0",
        "--code-b",
        "0",
        "--member-a",
        "0",
        "--member-b",
        "0",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "shift,re,im,abs");
    let zero = lines.find(|l| l.starts_with("0,")).expect("u=0 row");
    let fields: Vec<&str> = zero.split(',').collect();
    assert_eq!(fields[1].parse::<f64>().unwrap(), 16.0);
}

#[test]
fn corr_set_sum_profile_vanishes_inside_zone() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path(), "t2.json", "theorem2", r#"{"q":2,"m":4}"#);
    let o = run(&[
        "corr",
        set.to_str().unwrap(),
        "--code-a",
        "0",
        "--code-b",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    for row in &rows {
        let u = row["shift"].as_i64().unwrap();
        if u.unsigned_abs() <= 3 {
            assert!(row["abs"].as_f64().unwrap() < 1e-9, "nonzero at u={u}");
        }
    }
}

#[test]
fn train_exit_codes_track_optimality() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_set(dir.path(), "t2m5.json", "theorem2", r#"{"q":2,"m":5}"#);
    let o = run(&[
        "train",
        good.to_str().unwrap(),
        "--nt",
        "4",
        "--nactive",
        "2",
        "--lambda",
        "5",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["criteria"]["eq3_ok"], true);
    assert_eq!(doc["config"]["energy"], 64.0);

    let bad = write_set(
        dir.path(),
        "zc.json",
        "zadoff-chu",
        r#"{"length":32,"roots":[1,3,5,7],"codes":2}"#,
    );
    let o = run(&[
        "train",
        bad.to_str().unwrap(),
        "--nt",
        "4",
        "--nactive",
        "2",
        "--lambda",
        "5",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn train_writes_artifact_triple() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path(), "t2m5.json", "theorem2", r#"{"q":2,"m":5}"#);
    let prefix = dir.path().join("omega");
    let o = run(&[
        "train",
        set.to_str().unwrap(),
        "--nt",
        "4",
        "--nactive",
        "2",
        "--lambda",
        "3",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    for ext in ["omega.csv", "omega.json", "criteria.json"] {
        let p = dir.path().join(format!("omega.{ext}"));
        assert!(p.exists(), "missing artifact {}", p.display());
    }
}

#[test]
fn simulate_emits_deterministic_csv_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.json");
    std::fs::write(
        &cfg,
        r#"{
            "source": {"type": "theorem2", "q": 2, "m": 5},
            "nt": 4, "nactive": 2, "lambda": 2,
            "ebn0_db": [0.0, 10.0], "trials": 50, "seed": 11
        }"#,
    )
    .unwrap();
    let a = run(&["simulate", cfg.to_str().unwrap()]);
    assert_eq!(code(&a), 0);
    let b = run(&["simulate", cfg.to_str().unwrap()]);
    assert_eq!(stdout(&a), stdout(&b), "same seed must reproduce bytes");
    let text = stdout(&a);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'), "config header line");
    assert_eq!(lines.next().unwrap(), "ebn0_db,mse,stderr,min_mse,trials");
    assert_eq!(lines.count(), 2);
}

#[test]
fn simulate_rejects_zero_trials_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.json");
    std::fs::write(
        &cfg,
        r#"{
            "source": {"type": "czcp"},
            "nt": 4, "nactive": 2, "lambda": 2,
            "ebn0_db": [0.0], "trials": 0, "seed": 1
        }"#,
    )
    .unwrap();
    let o = run(&["simulate", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn report_summarizes_zone_and_bound() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path(), "t2.json", "theorem2", r#"{"q":2,"m":4}"#);
    let o = run(&["report", set.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["params"]["k"], 8);
    assert_eq!(doc["params"]["l"], 16);
    assert_eq!(doc["max_symmetric_z"], 3);
    assert_eq!(doc["bound_max_k_at_max_z"], 8);
    assert_eq!(doc["optimal_at_max_z"], true);
}

#[test]
fn generate_random_binary_is_seed_deterministic() {
    let a = run(&[
        "generate",
        "random-binary",
        "--params",
        r#"{"length":16,"count":4,"codes":2}"#,
        "--seed",
        "42",
    ]);
    let b = run(&[
        "generate",
        "random-binary",
        "--params",
        r#"{"length":16,"count":4,"codes":2}"#,
        "--seed",
        "42",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn theorem3_generate_roundtrip_both_halves() {
    let dir = tempfile::tempdir().unwrap();
    for which in ["s", "s-prime"] {
        let set = write_set(
            dir.path(),
            &format!("{which}.json"),
            "theorem3",
            &format!(r#"{{"q":2,"m":5,"v":3,"which":"{which}"}}"#),
        );
        let o = run(&["verify", set.to_str().unwrap(), "--z", "7"]);
        assert_eq!(code(&o), 0, "{which}: {}", stdout(&o));
    }
}
