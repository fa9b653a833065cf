use std::process::{Command, Output};

use serde_json::Value;

fn cycpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycpat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn enumerate_small_modulus() {
    let o = cycpat(&["enumerate", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 2, "{text}");
}

#[test]
fn enumerate_json_counts() {
    let o = cycpat(&["enumerate", "--q", "6", "--signed", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let counts = &v["counts"];
    assert_eq!(counts["product_pattern"], 7);
    assert_eq!(counts["total"], 14);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["enumerate", "--q", "8", "--signed", "--format", "json"][..],
        &["complexity", "--q", "7", "--pattern", "[a,b,b,c,b,c,c]", "--iters", "6", "--seed", "3"][..],
        &["verify", "--suite", "q8"][..],
    ] {
        let a = cycpat(args);
        let b = cycpat(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn classify_and_dual_round_trip() {
    let o = cycpat(&["classify", "--q", "8", "--pattern", "[a,a,a,a,b,a,a,a]"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["klass"], "InverseStableOnly");
    assert_eq!(v["dual"], "[a,b,-b,b,-b,b,-b,b]");

    let o = cycpat(&["dual", "--q", "8", "--pattern", "[a,b,-b,b,-b,b,-b,b]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[a,a,a,a,b,a,a,a]");
}

#[test]
fn verify_q8_passes() {
    let o = cycpat(&["verify", "--suite", "q8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().any(|l| l.starts_with("PASS q=8 reference list")));
}

#[test]
fn verify_reports_known_failures() {
    let o = cycpat(&["verify", "--suite", "tables", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failed: Vec<&str> =
        v.as_array().unwrap().iter().filter(|c| c["passed"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failed, ["class counts q=4", "class counts q=8"]);
}

#[test]
fn complexity_reports_recurrence() {
    let o = cycpat(&["complexity", "--q", "7", "--pattern", "[a,b,b,c,b,c,c]", "--iters", "10", "--half-step"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["degrees"], serde_json::json!([1, 2, 4, 7, 12, 20, 33, 54, 88, 143, 232]));
    let delta = v["delta"].as_f64().unwrap();
    assert!((delta - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-6);
}

#[test]
fn families_and_census() {
    let o = cycpat(&["families", "--family", "p2", "--q", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v[0]["subject"], "[a,b,-b,b,c,b,-b,b]");
    assert_eq!(v[0]["dual"], "[a,b,a,b,c,b,a,b]");

    let o = cycpat(&["census", "--q", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["enumerated"], 4);
    assert_eq!(v["formula"], 5);
}

#[test]
fn exit_codes() {
    assert_eq!(cycpat(&[]).status.code(), Some(2));
    assert_eq!(cycpat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cycpat(&["classify", "--q", "5", "--pattern", "[a,b,c,b]"]).status.code(), Some(2));
    assert_eq!(cycpat(&["classify", "--q", "4", "--pattern", "[a,b"]).status.code(), Some(2));
    assert_eq!(cycpat(&["dual", "--q", "5", "--pattern", "[a,b,c,a,a]"]).status.code(), Some(1));
    let bad_prime = ["complexity", "--q", "5", "--pattern", "[a,b,c,d,e]", "--iters", "3", "--prime-bits", "70"];
    assert_eq!(cycpat(&bad_prime).status.code(), Some(2));
    assert_eq!(cycpat(&["enumerate", "--q", "12", "--signed", "--max-nodes", "50"]).status.code(), Some(3));
    assert_eq!(cycpat(&["--help"]).status.code(), Some(0));
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cycpat_cli::run(["cycpat", "dual", "--q", "8", "--pattern", "[a,b,c,b,d,b,e,b]"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap().trim(), "[a,b,c,d,e,b,c,d]");
}
