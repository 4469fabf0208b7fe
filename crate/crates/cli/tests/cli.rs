use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logfront"))
        .args(args)
        .output()
        .unwrap()
}

fn report(out: &Output) -> serde_json::Value {
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    v["report"].clone()
}

#[test]
fn dual_of_the_hyperbola() {
    let out = run(&["dual", "--q", &data("hyperbola.poly")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["logfront"]["r_text"], "4*a*b - 1");
    assert_eq!(r["logfront"]["match"], true);
}

#[test]
fn predict_generic_conics() {
    let out = run(&["predict", "--p", &data("conic_p.poly"), "--q", &data("conic_q.poly")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["logfront"]["genus"], 9);
    assert_eq!(r["logfront"]["cusps"], 24);
    assert_eq!(r["logfront"]["sides"], serde_json::json!([4, 4, 4, 4, 4, 4]));
    assert_eq!(r["generic_closed_forms"]["genus"], 9);
}

#[test]
fn frozen_plot_csv() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.poly");
    std::fs::write(&r, "4*a*b - 1\n").unwrap();
    let csv = dir.path().join("f.csv");
    let args = [
        "plot",
        "--expr",
        r.to_str().unwrap(),
        "--mode",
        "frozen",
        "--window",
        "-3,1,-3,1",
        "--res",
        "256",
        "-o",
        csv.to_str().unwrap(),
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,residual"));
    let mut n = 0;
    for l in lines {
        let v: Vec<f64> = l.split(',').map(|t| t.parse().unwrap()).collect();
        assert!(v[2] < 1e-9);
        assert!((v[0] + v[1] + 4f64.ln()).abs() < 1e-3);
        n += 1;
    }
    assert!(n > 100);
    // Same inputs, same bytes.
    let first = out.stdout;
    let again = run(&args);
    assert_eq!(first, again.stdout);
    assert_eq!(text, std::fs::read_to_string(&csv).unwrap());
}

#[test]
fn svg_plot_has_a_view_box() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("a.svg");
    let out = run(&[
        "plot",
        "--expr",
        &data("line.poly"),
        "--mode",
        "amoeba",
        "--window",
        "-4,4,-4,4",
        "--res",
        "32",
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("viewBox=\"0 0 800 800\""));
}

#[test]
fn mismatch_exits_with_two() {
    let out = run(&["dual", "--q", &data("nodal_cubic.poly")]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["logfront"]["match"], false);
    let out = run(&[
        "dual",
        "--q",
        &data("nodal_cubic.poly"),
        "--profile-q",
        &data("nodal_cubic.profile.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn errors_exit_with_one() {
    assert_eq!(run(&["dual", "--bogus"]).status.code(), Some(1));
    let out = run(&["dual", "--q", "/nonexistent/q.poly"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "cli.read");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.poly");
    std::fs::write(&bad, "z + x").unwrap();
    let out = run(&["dual", "--q", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "exactalg.unknown_variable");
}

#[test]
fn degree_bound_is_enforced() {
    let out = run(&[
        "compute",
        "--p",
        &data("conic_p.poly"),
        "--q",
        &data("conic_q.poly"),
        "--degree-bound",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "logfront.degree_bound");
}

#[test]
fn klein_and_invariants_reports() {
    let out = run(&[
        "klein",
        "--p",
        &data("line.poly"),
        "--q",
        &data("quartic_two_ellipses.poly"),
    ]);
    let r = report(&out);
    assert_eq!(r["klein"]["value"], 8);
    assert_eq!(r["generic"], 8);
    assert_eq!(r["classical"]["residual"], 0);
    let out = run(&["invariants", "--curve", &data("conic_p.poly")]);
    let r = report(&out);
    assert_eq!(r["invariants"]["deg_gauss"], 4);
    assert_eq!(r["invariants"]["genus"], 0);
}

#[test]
fn verify_hyperbola_dual() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.poly");
    std::fs::write(&r, "4*a*b - 1").unwrap();
    let out = run(&[
        "verify",
        "--p",
        &data("line.poly"),
        "--q",
        &data("hyperbola.poly"),
        "--r",
        r.to_str().unwrap(),
        "--samples",
        "20",
    ]);
    let rep = report(&out);
    assert_eq!(rep["samples"]["verdict"], true, "{rep}");
    assert_eq!(rep["samples"]["samples"], 20);
}

#[test]
fn harnack_line_and_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_logfront"))
        .args([
            "harnack",
            "--p",
            &data("line.poly"),
            "--grid",
            "16",
            "--samples",
            "20000",
        ])
        .env("LOGFRONT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["fiber"]["max_fiber"], 2);
    assert_eq!(r["fiber"]["pass"], true);
}
