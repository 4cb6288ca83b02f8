use std::fs;
use std::process::Command;

use telegraph_occupation::law::MixedLaw;
use telegraph_occupation::sim::EmpiricalSummary;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_telegraph-occupation"))
}

#[test]
fn law_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (x, t) in [("0", "1000"), ("-1", "5"), ("1", "5")] {
        let out = dir.path().join(format!("law{x}.json"));
        let status = bin()
            .args(["law", "--lambda", "1", "--c", "1", "--T", t, "--x", x, "--v0", "plus", "--grid", "512"])
            .arg("--output")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        let law = MixedLaw::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
        assert!((law.total_mass() - 1.0).abs() < 1e-6, "x={x}: {}", law.total_mass());
    }
}

#[test]
fn simulate_then_compare() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig.csv");
    let status = bin()
        .args(["simulate", "--lambda", "1", "--c", "1", "--T", "1000", "--probe", "heaviside"])
        .args(["--x", "0", "--v0", "plus", "--n", "2000", "--seed", "42", "--output"])
        .arg(&csv)
        .status()
        .unwrap();
    assert!(status.success());
    let summary = EmpiricalSummary::read(
        fs::File::open(&csv).unwrap(),
        fs::File::open(csv.with_extension("json")).unwrap(),
    )
    .unwrap();
    assert_eq!(summary.n_runs, 2000);

    let overlay = dir.path().join("overlay.csv");
    let status = bin()
        .args(["compare", "--reference", "limit", "--format", "csv", "--input"])
        .arg(&csv)
        .arg("--output")
        .arg(&overlay)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&overlay).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "bin_left,bin_right,count,scaled_density,expected_count");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 100);
    let counted: f64 = rows.iter().map(|r| r[2]).sum();
    assert_eq!(counted, 2000.0);
    // arcsine density × N·Δ in the middle is close to N·Δ·2/π... per unit of N·Δ = 20
    let mid = &rows[50];
    assert!((mid[3] / 20.0 - 2.0 / std::f64::consts::PI).abs() < 1e-3);
}

#[test]
fn exit_codes() {
    let usage = bin().args(["simulate", "--n", "10"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let bad = bin().args(["law", "--T", "-3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let unknown = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
    let ok = bin().args(["verify", "--suite", "collapse"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert!(report.as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn config_file_with_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig.cfg");
    fs::write(&cfg, "lambda=1\nc=1\nT=100\nv0=plus\nn=300\nseed=7\n").unwrap();
    let run = |extra: &[&str]| {
        let out = bin().arg("simulate").arg("--config").arg(&cfg).args(extra).output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let base = run(&[]);
    assert_eq!(base, run(&["--seed", "7"]));
    assert_ne!(base, run(&["--seed", "8"]));
}

#[test]
fn solve_te_and_hitting_outputs() {
    let te = bin().args(["solve-te", "--nx", "3", "--nt", "2", "--format", "csv"]).output().unwrap();
    assert!(te.status.success());
    let text = String::from_utf8(te.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.contains("0,0,1\n"));

    let hit = bin()
        .args(["hitting", "--x", "-1", "--v0", "plus", "--grid", "3", "--format", "json"])
        .output()
        .unwrap();
    assert!(hit.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&hit.stdout).unwrap();
    assert!((doc["atom_at_t0"].as_f64().unwrap() - (-1.0f64).exp()).abs() < 1e-15);
}
