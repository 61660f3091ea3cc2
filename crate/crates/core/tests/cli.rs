use std::path::PathBuf;
use std::process::Command;

use lcalc::cli::run_with;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lcalc").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(args: &[&str], file: &str) -> (i32, Value) {
    let path = scratch(file);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--out", &p]);
    let (code, _, err) = run(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("no report: {err}"));
    (code, serde_json::from_str(&text).unwrap())
}

fn statuses(v: &Value) -> Vec<String> {
    v["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap().to_string()).collect()
}

#[test]
fn check_builtin_passes() {
    let (code, v) = report(&["check", "builtin:virasoro"], "check.json");
    assert_eq!(code, 0);
    assert_eq!(v["target"], "builtin:virasoro");
    assert!(statuses(&v).iter().all(|s| s == "pass"));
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.starts_with("C1")));
    assert!(names.iter().any(|n| n.starts_with("C3")));
    assert!(names.iter().any(|n| n.starts_with("C4")));
    assert!(v["timing_ms"].is_u64());
    assert!(v["command"].as_str().unwrap().contains("check builtin:virasoro"));
}

#[test]
fn broken_file_fails_with_witness() {
    let path = scratch("broken.lca");
    std::fs::write(
        &path,
        "algebra broken {\n  generator L : even;\n  bracket [L, L] = (2*D + 2*lam) L;\n}\n",
    )
    .unwrap();
    let (code, v) = report(&["check", path.to_str().unwrap()], "broken.json");
    assert_eq!(code, 1);
    for c in v["checks"].as_array().unwrap() {
        if c["status"] == "fail" {
            assert!(c["witness"].as_str().is_some_and(|w| !w.is_empty()));
        }
    }
    assert!(statuses(&v).contains(&"fail".to_string()));
}

#[test]
fn parse_errors_exit_2_with_span() {
    let path = scratch("bad.lca");
    std::fs::write(&path, "algebra v {\n  generator L : even;\n  bracket [L, M] = L;\n}\n").unwrap();
    let (code, _, err) = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains(":3:15: error[unknown-generator]"), "{err}");
    assert_eq!(run(&["check", "builtin:nope"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["lemma", "det", "--m", "3", "--N", "1"]).0, 2);
    assert_eq!(run(&["analyze", "builtin:virasoro"]).0, 2);
    assert_eq!(run(&["analyze", "builtin:virasoro", "--set", "q=1"]).0, 2);
    assert_eq!(run(&["fock", "theorem", "--gens", "x1+x2", "--cutoff", "6"]).0, 2);
}

#[test]
fn refused_windows_exit_3() {
    let (code, v) = report(&["fock", "extract", "--cutoff", "5", "--max-weight", "2"], "refused.json");
    assert_eq!(code, 3);
    assert_eq!(statuses(&v), ["refused"]);
    let (code, _, _) = run(&["fock", "theorem", "--gens", "x5", "--cutoff", "6", "--slack", "2"]);
    assert_eq!(code, 3);
    let (code, _, _) = run(&["fock", "skew", "--cutoff", "6", "--max-weight", "4"]);
    assert_eq!(code, 3);
}

#[test]
fn analyze_reports() {
    let (code, out, _) = run(&["analyze", "builtin:virasoro", "--set", "c=1", "--centre-bound", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("derived series: [R, R]"), "{out}");
    assert!(out.contains("centre: <C> (degree bound 3, stable at 4)"), "{out}");
    assert!(out.contains("central extension of a simple"), "{out}");
    let (code, out, _) = run(&["analyze", "builtin:heisenberg_conf"]);
    assert_eq!(code, 0);
    assert!(out.contains("derived series: [R, <C>, 0] (solvable)"), "{out}");
}

#[test]
fn inconclusive_alone_does_not_fail() {
    let (code, v) = report(&["analyze", "builtin:virasoro", "--set", "c=1", "--max-depth", "0"], "inc.json");
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    let inc: Vec<&Value> = checks.iter().filter(|c| c["status"] == "inconclusive").collect();
    assert!(!inc.is_empty());
    for c in inc {
        assert!(c["witness"].as_str().unwrap().contains(lcalc::cli::SEARCH_CAVEAT));
    }
}

#[test]
fn lemma_commands() {
    let (code, out, _) = run(&["lemma", "det", "--m", "1", "--N", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("computed 1/2 = closed form 1/2"), "{out}");
    let input = scratch("sep.json");
    std::fs::write(&input, r#"{"m": 1, "n": 0, "coefficients": {"1": {"0": "1"}, "2": {"1": "1"}, "3": {"2": "1/2"}}}"#).unwrap();
    let (code, out, _) = run(&["lemma", "separate", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("p_0 = 0; p_1 = (1)"), "{out}");
    // a degree-3 coefficient inconsistent with the recovered p
    std::fs::write(&input, r#"{"m": 1, "n": 0, "coefficients": {"1": {"0": "1"}, "2": {"1": "1"}, "3": {"2": "1"}}}"#).unwrap();
    assert_eq!(run(&["lemma", "separate", "--input", input.to_str().unwrap()]).0, 1);
}

#[test]
fn bracket_and_fock_commands() {
    let (code, out, _) = run(&["bracket", "builtin:virasoro", "L", "L"]);
    assert_eq!(code, 0);
    assert!(out.contains("D*L + 2*lam*L + 1/12*c*lam^3*C"), "{out}");
    let (code, out, _) = run(&["fock", "extract", "--cutoff", "6", "--max-weight", "1"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = run(&["fock", "wick", "--cutoff", "8", "--max-weight", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn reports_are_deterministic() {
    let args = ["analyze", "builtin:current_sl2", "--set", "k=2"];
    let (_, mut a) = report(&args, "det1.json");
    let (_, mut b) = report(&args, "det2.json");
    // the echoed command differs only in the --out path
    for r in [&mut a, &mut b] {
        r["timing_ms"] = Value::Null;
        r["command"] = Value::Null;
    }
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lcalc");
    let ok = Command::new(bin).args(["lemma", "det", "--m", "2", "--N", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).args(["check"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
