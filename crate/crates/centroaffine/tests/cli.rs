use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_centroaffine")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_record(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.lines().last().expect("a record on stderr")).expect("stderr record is JSON")
}

fn column(v: &Value, name: &str) -> Vec<Value> {
    v["rows"].as_array().unwrap().iter().map(|r| r[name].clone()).collect()
}

fn spiral_samples(c: f64, t0: f64, t1: f64, n: usize, noise: f64) -> Value {
    let pts: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let t = t0 + (t1 - t0) * i as f64 / (n - 1) as f64;
            let wiggle = if i % 2 == 0 { noise } else { -noise };
            let r = (c * t).exp();
            [r * t.cos() + wiggle, r * t.sin()]
        })
        .collect();
    serde_json::json!({ "kind": "sampled", "t_min": t0, "t_max": t1, "samples": pts })
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn spiral_invariants_have_constant_curvature() {
    let out = run(&["invariants", "--input", "builtin:spiral:c=0.2", "--grid", "-1,1,101"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let kappa = column(&v, "kappa");
    assert_eq!(kappa.len(), 101);
    for k in kappa {
        assert!((k.as_f64().unwrap() - 0.784465).abs() < 1e-6);
    }
}

#[test]
fn ellipse_invariants_vanish() {
    let out = run(&["invariants", "--input", "builtin:ellipse:a=2,b=1", "--grid", "0,6,61"]);
    assert_eq!(out.status.code(), Some(0));
    for k in column(&json(&out), "kappa") {
        assert!(k.as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn clockwise_circle_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let pts: Vec<[f64; 2]> = (0..41).map(|i| {
        let t = i as f64 * 0.05;
        [t.cos(), -t.sin()]
    }).collect();
    let file = write(dir.path(), "cw.json", &serde_json::json!({ "kind": "sampled", "t_min": 0.0, "t_max": 2.0, "samples": pts }));
    let out = run(&["invariants", "--input", &file]);
    assert_eq!(out.status.code(), Some(centroaffine::EXIT_NOT_CONVEX));
    let rec = error_record(&out);
    assert_eq!(rec["exit_code"], centroaffine::EXIT_NOT_CONVEX);
    assert!(rec["message"].as_str().unwrap().contains("not 0-convex"));
    assert!(out.stdout.is_empty());
}

#[test]
fn spiral_osculating_path_is_future_null() {
    let out = run(&["osculate", "--input", "builtin:spiral:c=0.2", "--grid", "-1,1,51"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["summary"]["max_nullity_residual"].as_f64().unwrap() <= 1e-8);
    assert!(column(&v, "orientation").iter().all(|o| o == "future"));
    assert!(column(&v, "kind").iter().all(|o| o == "null"));
    assert_eq!(v["path"].as_array().unwrap().len(), 51);

    let past = json(&run(&["osculate", "--input", "builtin:spiral:c=-0.2", "--grid", "-1,1,11"]));
    assert!(column(&past, "orientation").iter().all(|o| o == "past"));
}

#[test]
fn ellipse_osculating_path_is_degenerate() {
    let v = json(&run(&["osculate", "--input", "builtin:ellipse:a=2,b=1", "--grid", "0,3,31"]));
    let first = &v["path"][0];
    for rec in v["path"].as_array().unwrap() {
        for key in ["a11", "a12", "a22"] {
            assert!((rec[key].as_f64().unwrap() - first[key].as_f64().unwrap()).abs() < 1e-12);
        }
    }
    assert!(column(&v, "orientation").iter().all(|o| o == "degenerate"));
}

#[test]
fn perturbed_samples_warn() {
    let dir = tempfile::tempdir().unwrap();
    let clean = write(dir.path(), "clean.json", &spiral_samples(0.2, -1.0, 1.0, 201, 0.0));
    let noisy = write(dir.path(), "noisy.json", &spiral_samples(0.2, -1.0, 1.0, 201, 1e-7));
    assert_eq!(run(&["osculate", "--input", &clean]).status.code(), Some(0));
    let out = run(&["osculate", "--input", &noisy]);
    assert_eq!(out.status.code(), Some(centroaffine::EXIT_WARNING));
    let v = json(&out);
    assert!(v["summary"]["max_nullity_residual"].as_f64().unwrap() > 1e-6);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    assert_eq!(error_record(&out)["exit_code"], centroaffine::EXIT_WARNING);
}

#[test]
fn spiral_length_and_its_invariance() {
    let base = json(&run(&["length", "--input", "builtin:spiral:c=0.2,standard=1", "--grid", "0,1,11"]));
    let l = base["summary"]["length"].as_f64().unwrap();
    assert!((l - 0.885700).abs() < 5e-7);
    let moved = run(&["length", "--input", "builtin:spiral:c=0.2,standard=1", "--grid", "0,1,11", "--transform", "[[1,1],[0,1]]"]);
    assert_eq!(moved.status.code(), Some(0));
    let lm = json(&moved)["summary"]["length"].as_f64().unwrap();
    assert!((lm - l).abs() / l < 1e-5);
}

#[test]
fn vertex_window_warns() {
    let out = run(&["length", "--input", "builtin:generic", "--grid", "-0.5,0.5,21"]);
    assert_eq!(out.status.code(), Some(centroaffine::EXIT_WARNING));
    let v = json(&out);
    assert_eq!(v["summary"]["vertex_crossing"], true);
    assert!(v["warnings"][0].as_str().unwrap().starts_with("vertex-crossing"));
    assert!(v["summary"]["length"].as_f64().unwrap() > 0.0);
}

fn reversed_path(path: &Value) -> Value {
    let recs: Vec<Value> = path
        .as_array()
        .unwrap()
        .iter()
        .rev()
        .map(|r| {
            let mut r = r.clone();
            r["t"] = Value::from(-r["t"].as_f64().unwrap());
            r
        })
        .collect();
    Value::Array(recs)
}

fn spiral_point(c: f64, t: f64) -> [f64; 2] {
    let r = (c * t).exp();
    [r * t.cos(), r * t.sin()]
}

fn max_error_mod_sign(v: &Value, point: impl Fn(f64) -> [f64; 2]) -> f64 {
    let (mut plus, mut minus): (f64, f64) = (0.0, 0.0);
    for row in v["rows"].as_array().unwrap() {
        let t = row["t"].as_f64().unwrap();
        let (x, y) = (row["x"].as_f64().unwrap(), row["y"].as_f64().unwrap());
        let [px, py] = point(t);
        let n = px.hypot(py);
        plus = plus.max((x - px).hypot(y - py) / n);
        minus = minus.max((x + px).hypot(y + py) / n);
    }
    plus.min(minus)
}

#[test]
fn reconstruction_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let osc = dir.path().join("osc.json");
    let out = run(&["osculate", "--input", "builtin:spiral:c=0.2", "--grid", "-1,1,201", "--out", osc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    // The osculate report is itself a valid path file.
    let rec = run(&["reconstruct", "--input", osc.to_str().unwrap()]);
    assert_eq!(rec.status.code(), Some(0));
    let v = json(&rec);
    assert_eq!(v["summary"]["time_reversed"], false);
    assert_eq!(v["summary"]["zero_convex"], true);
    assert!(v["summary"]["min_wedge_pos_vel"].as_f64().unwrap() > 0.0);
    assert!(max_error_mod_sign(&v, |t| spiral_point(0.2, t)) < 1e-6);

    let report: Value = serde_json::from_str(&std::fs::read_to_string(&osc).unwrap()).unwrap();
    let reversed = write(dir.path(), "reversed.json", &reversed_path(&report["path"]));
    let back = json(&run(&["reconstruct", "--input", &reversed]));
    assert_eq!(back["summary"]["time_reversed"], true);
    assert!(max_error_mod_sign(&back, |t| spiral_point(0.2, t)) < 1e-6);

    // The emitted curve file is accepted as a curve input.
    let curve = write(dir.path(), "curve.json", &v["curve"]);
    let inv = run(&["invariants", "--input", &curve]);
    assert_eq!(inv.status.code(), Some(0));
}

#[test]
fn generic_round_trip_residual() {
    let out = run(&["reconstruct", "--input", "builtin:generic", "--grid", "0.3,1.2,181"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["summary"]["osculation_residual"].as_f64().unwrap() <= 1e-5);
}

#[test]
fn constant_path_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let recs: Vec<Value> = (0..11).map(|i| serde_json::json!({ "t": i as f64 * 0.1, "a11": 2.0, "a12": 0.0, "a22": 0.5 })).collect();
    let file = write(dir.path(), "const.json", &Value::Array(recs));
    let out = run(&["reconstruct", "--input", &file]);
    assert_eq!(out.status.code(), Some(centroaffine::EXIT_MATH));
    assert_eq!(error_record(&out)["error"], "math");
}

#[test]
fn check_filters_and_is_deterministic() {
    let out = run(&["check", "--only", "conformal-norm"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["rows"][0]["property"], "conformal-norm");
    for seed in ["5", "6"] {
        let a = run(&["check", "--seed", seed, "--format", "csv"]);
        let b = run(&["check", "--seed", seed, "--format", "csv"]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    assert_eq!(run(&["check", "--only", "nope"]).status.code(), Some(centroaffine::EXIT_USAGE));
}

#[test]
fn error_paths_have_records() {
    let missing = run(&["invariants", "--input", "/nonexistent/curve.json"]);
    assert_eq!(missing.status.code(), Some(centroaffine::EXIT_IO));
    assert_eq!(error_record(&missing)["error"], "io");

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", &serde_json::json!({ "kind": "builtin", "family": "spiral", "params": { "c": 0.2 }, "extra": 1 }));
    assert_eq!(run(&["invariants", "--input", &bad]).status.code(), Some(centroaffine::EXIT_SCHEMA));

    let grid = run(&["invariants", "--input", "builtin:circle", "--grid", "0,1,5"]);
    assert_eq!(grid.status.code(), Some(centroaffine::EXIT_USAGE));
    let det = run(&["length", "--input", "builtin:circle", "--transform", "0,1,1,0"]);
    assert_eq!(det.status.code(), Some(centroaffine::EXIT_USAGE));
    assert!(error_record(&det)["message"].as_str().unwrap().contains("det"));
}

#[test]
fn csv_projection_matches_json() {
    let j = json(&run(&["invariants", "--input", "builtin:spiral:c=0.5", "--grid", "0,1,11"]));
    let c = run(&["invariants", "--input", "builtin:spiral:c=0.5", "--grid", "0,1,11", "--format", "csv"]);
    let text = String::from_utf8(c.stdout).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "t,x,y,kappa,euclidean_curvature,density,vertex,wedge_pos_vel,wedge_vel_acc");
    for (line, row) in body[1..].iter().zip(j["rows"].as_array().unwrap()) {
        let kappa: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert_eq!(kappa, row["kappa"].as_f64().unwrap());
    }
}
