//! End-to-end tests of the binary: exit codes on a golden invocation set,
//! JSON round-trips of the bundled fixtures, and byte-identical output under
//! a fixed seed.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("fixtures");
    p.push(name);
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latwidth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap_or(-1)
}

#[test]
fn golden_exit_codes() {
    let tmp = std::env::temp_dir().join("latwidth-bad.json");
    std::fs::write(&tmp, r#"{"vertices": [["1/0", "2"]]}"#).unwrap();
    let bad = tmp.display().to_string();
    let s = |v: &[&str]| -> Vec<String> { v.iter().map(|x| x.to_string()).collect() };
    let golden: Vec<(Vec<String>, i32)> = vec![
        (s(&["width", &fixture("3delta2.json")]), 0),
        (s(&["width", &fixture("terminal_triangle.json")]), 0),
        (s(&["width", "/nonexistent/nope.json"]), 2),
        (s(&["width", &bad]), 2),
        (s(&["metrics", &fixture("extremal_hexagon.json")]), 0),
        (s(&["points", &fixture("3delta2.json"), "--interior"]), 0),
        (s(&["points", &fixture("unit_square.json")]), 0),
        (s(&["blocking", &fixture("centered_3delta2.json")]), 0),
        (s(&["maximal", &fixture("3delta2.json"), "--k", "1"]), 0),
        (s(&["maximal", &fixture("unit_square.json"), "--k", "0"]), 0),
        (s(&["regions", "--case", "hex"]), 0),
        (s(&["regions", "--case", "empty-triangle"]), 0),
        (s(&["regions", "--case", "bogus"]), 2),
        (s(&["verify", "--case", "term", "--grid", "8"]), 0),
        (s(&["verify"]), 2),
        (s(&["search", "--shape", "tri", "--radius", "3"]), 0),
        (s(&["search", "--shape", "tri", "--radius", "9"]), 2),
        (s(&["search", "--shape", "pent", "--radius", "3"]), 2),
        (s(&["check", "--suite", "extremizers"]), 0),
        (s(&["check", "--suite", "bogus"]), 2),
    ];
    assert_eq!(golden.len(), 20);
    for (args, expected) in &golden {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = exit_code(&argv);
        assert_eq!(got, *expected, "latwidth {args:?} exited {got}");
    }
}

#[test]
fn width_values_on_fixtures() {
    let out = run(&["width", &fixture("3delta2.json")]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["value"], "3");
    assert_eq!(v["results"]["direction"], serde_json::json!([1, 0]));

    let out = run(&["width", &fixture("flt22_maximizer.json")]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["value"], "10/3");

    let out = run(&["width", &fixture("hollow_quadrilateral.json")]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["value"], "2");
}

#[test]
fn fixtures_round_trip() {
    for name in [
        "3delta2.json",
        "terminal_triangle.json",
        "flt22_maximizer.json",
        "extremal_hexagon.json",
        "centered_3delta2.json",
        "hollow_quadrilateral.json",
        "unit_square.json",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let parsed = latwidth_core::json::polygon_from_json(&value).unwrap();
        let serialized = latwidth_core::json::polygon_to_json(&parsed);
        let reparsed = latwidth_core::json::polygon_from_json(&serialized).unwrap();
        assert_eq!(parsed, reparsed, "{name}");
    }
}

#[test]
fn seed_determinism() {
    let a = run(&["check", "--suite", "transference", "--samples", "20", "--seed", "5"]);
    let b = run(&["check", "--suite", "transference", "--samples", "20", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");
    assert_eq!(a.status.code(), Some(0));
    // a different seed still passes every suite
    let c = run(&["check", "--suite", "transference", "--samples", "20", "--seed", "99"]);
    assert_eq!(c.status.code(), Some(0));
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verify_reports_are_structured() {
    let out = run(&["verify", "--case", "hex", "--grid", "8", "--refine-iters", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let report = &v["results"][0];
    assert_eq!(report["case"], "hex");
    assert!(report["best_width_found"].as_f64().unwrap() >= 2.9);
    assert_eq!(report["pass"], true);
}

#[test]
fn search_emits_argmax() {
    let tmp = std::env::temp_dir().join("latwidth-argmax.json");
    let _ = std::fs::remove_file(&tmp);
    let out = run(&[
        "search",
        "--shape",
        "tri",
        "--radius",
        "3",
        "--interior",
        "0..1",
        "--emit-argmax",
        &tmp.display().to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let emitted: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&tmp).unwrap()).unwrap();
    let polys = emitted.as_array().unwrap();
    assert_eq!(polys.len(), 1);
    let p = latwidth_core::json::polygon_from_json(&polys[0]).unwrap();
    let w = latwidth_core::metrics::lattice_width(&p).unwrap();
    assert_eq!(latwidth_core::rational::rat_to_string(&w.value), "3");
}
