use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kvn_core::scenarios::{ScenarioConfig, ScenarioKind};
use serde_json::Value;

fn kvn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kvn")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write_config(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path
}

fn reduced(kind: ScenarioKind) -> Value {
    ScenarioConfig::reduced(kind).to_json()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&kvn(&["--help"])), 0);
    assert_eq!(code(&kvn(&["--version"])), 0);
    assert_eq!(code(&kvn(&[])), 1);
    assert_eq!(code(&kvn(&["frobnicate"])), 1);
    assert_eq!(code(&kvn(&["verify", "--level", "slow"])), 1);
}

#[test]
fn derive_reports_momentum_meter_entries() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "m.json", &serde_json::json!({ "scenario": "momentum_meter" }));
    let out = kvn(&["derive", s(&cfg)]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = doc["entries"].as_array().unwrap();
    let q = entries.iter().find(|e| e["variable"] == "q").unwrap();
    assert_eq!(q["observable"], false);
    assert_eq!(q["matches"], true);
    assert_eq!(doc["config"]["omega"], 1.0);
    assert_eq!(doc["engine"]["algebra_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn derive_free_classical_lists_all_four_generators() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "f.json", &serde_json::json!({ "scenario": "free_classical", "m": 2.0 }));
    let out = kvn(&["derive", s(&cfg)]);
    assert_eq!(code(&out), 3);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let vars: Vec<&str> = doc["entries"].as_array().unwrap().iter().map(|e| e["variable"].as_str().unwrap()).collect();
    assert_eq!(vars, ["a", "b", "at", "bt"]);
    let b = &doc["entries"][1];
    assert_eq!(b["printed"], "a/m");
    assert_eq!(b["engine_rhs"], "(1/2,0)*a");
    assert_eq!(b["matches"], true);
}

#[test]
fn config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write_config(dir.path(), "u.json", &serde_json::json!({ "scenario": "spin_meter", "coupling": 0.3 }));
    assert_eq!(code(&kvn(&["derive", s(&unknown)])), 1);
    assert_eq!(code(&kvn(&["evolve", s(&unknown)])), 1);
    let broken = dir.path().join("b.json");
    std::fs::write(&broken, "{ not json").unwrap();
    assert_eq!(code(&kvn(&["derive", s(&broken)])), 1);
    assert_eq!(code(&kvn(&["derive", s(&dir.path().join("missing.json"))])), 1);
}

#[test]
fn evolve_writes_deterministic_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ScenarioConfig::reduced(ScenarioKind::FreeClassical);
    let path = write_config(dir.path(), "free.json", &cfg.to_json());
    let (o1, o2) = (dir.path().join("r1"), dir.path().join("r2"));
    assert_eq!(code(&kvn(&["evolve", s(&path), "--out", s(&o1)])), 0);
    assert_eq!(code(&kvn(&["evolve", s(&path), "--out", s(&o2)])), 0);
    for f in ["trajectory.csv", "result.json"] {
        assert_eq!(std::fs::read(o1.join(f)).unwrap(), std::fs::read(o2.join(f)).unwrap(), "{f}");
    }
    let csv = std::fs::read_to_string(o1.join("trajectory.csv")).unwrap();
    assert!(!csv.contains('\r'));
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[0], "t");
    let b_col = header.iter().position(|h| *h == "b").unwrap();
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), cfg.propagator.record_steps().len());
    let last = rows.last().unwrap();
    let want = cfg.initial.b0 + cfg.initial.a0 / cfg.m * cfg.duration();
    assert!((last[b_col] - want).abs() < 1e-5);

    let result: Value = serde_json::from_str(&std::fs::read_to_string(o1.join("result.json")).unwrap()).unwrap();
    assert_eq!(result["status"], "ok");
    assert_eq!(result["config"], cfg.to_json());
    assert!(result["engine"]["version"].is_string());
}

#[test]
fn evolve_reports_inferred_momentum() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ScenarioConfig::momentum_calibration_reduced().to_json();
    cfg["out"] = Value::String(s(&dir.path().join("from_file")).into());
    let path = write_config(dir.path(), "cal.json", &cfg);
    assert_eq!(code(&kvn(&["evolve", s(&path)])), 0);
    let result: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("from_file/result.json")).unwrap()).unwrap();
    let p = result["inferred_momentum"].as_f64().unwrap();
    assert!((p - 1.5).abs() < 1e-3, "{p}");
    assert!(result["config"].get("out").is_none());
}

#[test]
fn unwritable_output_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "spin.json", &reduced(ScenarioKind::SpinMeter));
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = kvn(&["evolve", s(&path), "--out", s(&blocker.join("sub"))]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn monitor_trip_exits_4_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = reduced(ScenarioKind::FreeClassical);
    // drive the packet across the b boundary
    cfg["propagator"]["n_steps"] = 8000.into();
    let path = write_config(dir.path(), "leak.json", &cfg);
    let out_dir = dir.path().join("o");
    assert_eq!(code(&kvn(&["evolve", s(&path), "--out", s(&out_dir)])), 4);
    let result: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("result.json")).unwrap()).unwrap();
    assert_eq!(result["status"], "monitor_trip");
    assert_eq!(result["diagnostics"]["trip"]["kind"], "leakage");
    assert!(!out_dir.join("trajectory.csv").exists());
}

#[test]
fn sweep_writes_one_directory_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "spin.json", &reduced(ScenarioKind::SpinMeter));
    let out_dir = dir.path().join("sw");
    let out = kvn(&["sweep", s(&path), "--param", "g=0.2,0.4", "--param", "initial.quantum.spin.theta=0,3.141592653589793", "--out", s(&out_dir)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let summary: Value = serde_json::from_str(&std::fs::read_to_string(out_dir.join("sweep.json")).unwrap()).unwrap();
    let points = summary["points"].as_array().unwrap();
    assert_eq!(points.len(), 4);
    for (k, p) in points.iter().enumerate() {
        let d = out_dir.join(format!("point_{k:03}"));
        assert!(d.join("trajectory.csv").exists() && d.join("result.json").exists());
        assert_eq!(p["status"], "ok");
    }
    // theta = 0 reads s3 = +1/2, theta = pi reads -1/2
    let s3 = |k: usize| points[k]["inferred"].as_f64().unwrap();
    assert!((s3(0) - 0.5).abs() < 1e-3 && (s3(1) + 0.5).abs() < 1e-3);
    assert!((s3(2) - 0.5).abs() < 1e-3 && (s3(3) + 0.5).abs() < 1e-3);

    let bad = kvn(&["sweep", s(&path), "--param", "gee=1", "--out", s(&out_dir)]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn verify_fast_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_kvn")).args(["verify", "--level", "fast"]).env("KVN_THREADS", "2").output().unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = doc["report"]["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["algebra", "representation", "propagator", "scenarios"]);
}
