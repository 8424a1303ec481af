use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use swd_invariants::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["swd"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("swd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn fixture(q: &str, n: &str) -> PathBuf {
    let (code, out, _) = run(&["examples", "--q", q, "--n", n]);
    assert_eq!(code, 0);
    scratch(&format!("x{q}_{n}.json"), &out)
}

fn h_for(rank: usize) -> String {
    (0..rank).map(|i| format!("{}/{}", (i * 5) % 7, 1 + i % 3)).collect::<Vec<_>>().join(",")
}

#[test]
fn examples_emit_the_model() {
    let (code, out, _) = run(&["examples", "--q", "2", "--n", "0"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lattice"]["rank"], 23);
    let x: swd_invariants::FourManifold = serde_json::from_str(&out).unwrap();
    assert_eq!(x.c(), 3);

    let (_, out, _) = run(&["examples", "--q", "2", "--n", "2"]);
    let x: swd_invariants::FourManifold = serde_json::from_str(&out).unwrap();
    assert_eq!((x.c(), x.basic_classes().len()), (5, 8));

    let (code, _, err) = run(&["examples", "--q", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("q ≥ 2"), "{err}");
}

#[test]
fn compute_both_agrees_on_the_fixture() {
    let m = fixture("2", "2");
    let h = h_for(25);
    let args = [
        "compute", "--manifest", m.to_str().unwrap(), "--w", "K0", "--lambda", "2*(f1+f2)",
        "--delta", "5", "--m", "1", "--h", &h, "--mode", "both", "--seed", "3",
    ];
    let (code, out, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["witten"], v["cobordism"]);
    assert!(v["witten"].as_str().unwrap().contains('/'));
    // byte-identical on rerun
    assert_eq!(run(&args).1, out);
}

#[test]
fn compute_reports_violations_with_exit_2() {
    let m = fixture("2", "2");
    let h = h_for(25);
    let (code, _, err) = run(&[
        "compute", "--manifest", m.to_str().unwrap(), "--w", "K0", "--delta", "1", "--m", "1", "--h", &h,
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("δ − 2m ≥ 0"), "{err}");

    let (code, _, err) = run(&[
        "compute", "--manifest", m.to_str().unwrap(), "--w", "K0", "--delta", "61", "--h", &h,
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("max-delta"), "{err}");
}

#[test]
fn malformed_input_exits_1() {
    let bad = scratch(
        "bad.json",
        r#"{"lattice": {"rank": 2, "gram": [[0, 1], [2, 0]]}, "sw": []}"#,
    );
    let (code, _, err) = run(&["compute", "--manifest", bad.to_str().unwrap(), "--w", "[0,0]", "--delta", "0", "--h", "0,0"]);
    assert_eq!(code, 1);
    assert!(err.contains("symmetric"), "{err}");

    let m = fixture("2", "0");
    let (code, _, err) = run(&["compute", "--manifest", m.to_str().unwrap(), "--w", "nosuch", "--delta", "3", "--h", &h_for(23)]);
    assert_eq!(code, 1);
    assert!(err.contains("nosuch"), "{err}");

    let (code, _, _) = run(&["compute", "--manifest", "/nonexistent.json", "--w", "K", "--delta", "3", "--h", "0"]);
    assert_eq!(code, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
}

#[test]
fn blowup_and_check_scst() {
    let m = fixture("2", "1");
    let (code, out, _) = run(&["blowup", "--manifest", m.to_str().unwrap()]);
    assert_eq!(code, 0);
    let x: swd_invariants::FourManifold = serde_json::from_str(&out).unwrap();
    assert_eq!((x.lattice().rank(), x.c(), x.basic_classes().len()), (25, 5, 8));

    let blown = scratch("blown.json", &out);
    let (code, out, _) = run(&["check-scst", "--manifest", blown.to_str().unwrap(), "--w", "K0+e2"]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["scst"], true);
    assert_eq!(v["c"], 5);
}

#[test]
fn report_gates_and_breaks_down() {
    let m = fixture("3", "2");
    let h = h_for(36);
    let (code, out, err) = run(&[
        "report", "--manifest", m.to_str().unwrap(), "--w", "K0", "--lambda", "4*(f1+f2)",
        "--delta", "9", "--m", "1", "--h", &h, "--seeds", "3",
    ]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["seed_independent"], true);
    assert_eq!(v["cobordism"].as_array().unwrap().len(), 3);
    assert!(!v["terms"].as_array().unwrap().is_empty());

    let (code, _, err) = run(&[
        "report", "--manifest", m.to_str().unwrap(), "--w", "K0", "--lambda", "2*(f1+f2)+2*e1",
        "--delta", "9", "--m", "1", "--h", &h,
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("mod 4"), "{err}");
}

#[test]
fn verify_suites() {
    let (code, out, _) = run(&["verify", "--suite", "diffops", "--trials", "200"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");

    let (code, out, _) = run(&["verify", "--suite", "main-theorem", "--seeds", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("NOTE"));

    let (code, _, err) = run(&["verify", "--suite", "bogus"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown suite"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_swd");
    let out = Command::new(bin).args(["examples", "--q", "2"]).output().unwrap();
    assert!(out.status.success());
    let out = Command::new(bin).args(["verify", "--suite", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin).args(["examples", "--q", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
