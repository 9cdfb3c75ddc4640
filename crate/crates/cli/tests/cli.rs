use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CUBE: &str = r#"{"halfspaces": [[1,0,0,1],[-1,0,0,1],[0,1,0,1],[0,-1,0,1],[0,0,1,1],[0,0,-1,1]]}"#;

fn tilecert(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilecert"))
        .args(args)
        .current_dir(dir)
        .env_remove("TILECERT_TOL")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

#[test]
fn tangent_cube_passes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cube.json"), CUBE).unwrap();
    let out = tilecert(&["cell-certify", "--input", "cube.json", "--jsonl", "certs.jsonl"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["certificates"].as_array().unwrap().len(), 4);
    assert_eq!(r["all_pass"], true);
    let lines = std::fs::read_to_string(dir.path().join("certs.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 4);
    for l in lines.lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn flat_box_violates_precondition() {
    let dir = tempfile::tempdir().unwrap();
    let flat = r#"{"halfspaces": [[1,0,0,2],[-1,0,0,2],[0,1,0,2],[0,-1,0,2],[0,0,1,0.5],[0,0,-1,0.5]]}"#;
    std::fs::write(dir.path().join("box.json"), flat).unwrap();
    let out = tilecert(&["cell-certify", "--input", "box.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["all_pass"], false);
    let v = r["violations"].as_array().unwrap();
    assert_eq!(v.len(), 3);
    assert!(v[0].as_str().unwrap().contains("inradius"));
}

#[test]
fn fcc_series_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = tilecert(&["tiling-series", "--preset", "FCC", "--Ls", "10,20,40"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["result"]["reports"].as_array().unwrap().len(), 3);
    assert!(r["result"]["min_average"].as_f64().unwrap() >= 13.8564);
}

#[test]
fn off_export_round_trips_through_hull() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("cube.json"), CUBE).unwrap();
    let a = tilecert(&["cell-metrics", "--input", "cube.json", "--off", "cube.off"], dir.path());
    assert_eq!(a.status.code(), Some(0));
    let b = tilecert(&["cell-metrics", "--input", "cube.off"], dir.path());
    assert_eq!(b.status.code(), Some(0));
    let (ra, rb) = (report(&a), report(&b));
    for key in ["sarea", "vol", "inradius", "total_edge_length"] {
        let (x, y) = (ra["result"][key].as_f64().unwrap(), rb["result"][key].as_f64().unwrap());
        assert!((x - y).abs() <= 1e-12 * x.abs(), "{key}: {x} vs {y}");
    }
}

#[test]
fn non_unit_normal_warns() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"halfspaces": [[2,0,0,2],[-1,0,0,1],[0,1,0,1],[0,-1,0,1],[0,0,1,1],[0,0,-1,1]]}"#;
    std::fs::write(dir.path().join("p.json"), text).unwrap();
    let out = tilecert(&["cell-metrics", "--input", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["warnings"].as_array().unwrap().len(), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("normalized"));
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{not json").unwrap();
    assert_eq!(tilecert(&["cell-metrics", "--input", "bad.json"], dir.path()).status.code(), Some(1));
    assert_eq!(tilecert(&["cell-metrics", "--input", "missing.json"], dir.path()).status.code(), Some(1));
    assert_eq!(tilecert(&["optimize", "--faces", "2"], dir.path()).status.code(), Some(1));
    assert_eq!(tilecert(&["tiling-report", "--preset", "xyz", "--L", "10"], dir.path()).status.code(), Some(1));
    let open = r#"{"halfspaces": [[1,0,0,1],[-1,0,0,1],[0,1,0,1]]}"#;
    std::fs::write(dir.path().join("open.json"), open).unwrap();
    assert_eq!(tilecert(&["cell-metrics", "--input", "open.json"], dir.path()).status.code(), Some(1));
}

#[test]
fn tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_tilecert"))
        .args(["cell-certify", "--preset", "bcc"])
        .current_dir(dir.path())
        .env("TILECERT_TOL", "1e-5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["config"]["tol"], 1e-5);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["optimize", "--faces", "8", "--restarts", "3", "--seed", "17", "--output", "out.json"][..],
        &["tiling-report", "--preset", "hcp", "--L", "12", "--output", "out.json"][..],
    ] {
        assert!(tilecert(args, dir.path()).status.success());
        let a = std::fs::read(dir.path().join("out.json")).unwrap();
        assert!(tilecert(args, dir.path()).status.success());
        let b = std::fs::read(dir.path().join("out.json")).unwrap();
        assert_eq!(a, b);
    }
}
