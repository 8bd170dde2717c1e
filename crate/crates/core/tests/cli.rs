use std::io::Write;
use std::process::{Command, Output, Stdio};

use recap::ap_engine::APSolution;
use recap::poly::Polynomial;
use recap::toolkit::{ClassificationReport, FactorDocument, SearchDocument};
use recap::trinomial::TrinomialFactorization;

const FIB: &str = r#"{"coeffs":["1","1"],"initial":["0","1"]}"#;

fn recap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recap"))
        .args(args)
        .env_remove("RECAP_MAX_WINDOW")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_fibonacci_json() {
    let o = recap(&["classify", "--json", FIB]);
    assert_eq!(o.status.code(), Some(0));
    let r: ClassificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.structure.is_simple && !r.structure.is_degenerate && !r.structure.is_unitary);
    assert_eq!(r.structure.symmetric.map(|s| s.m), Some(2));
    assert!(!r.families.is_empty());
}

#[test]
fn classify_accepts_integer_json_and_text_format() {
    let o = recap(&["classify", "--json", r#"{"coeffs":[1,1],"initial":[0,1]}"#, "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("f_{n+2} = f_{n+1} + f_n"));
}

#[test]
fn search_reports_isolated_and_four_term() {
    let o = recap(&["search", "--json", FIB, "--window", "0:30"]);
    assert_eq!(o.status.code(), Some(0));
    let d: SearchDocument = serde_json::from_str(&stdout(&o)).unwrap();
    let iso: Vec<[i64; 3]> = d.isolated.unwrap().iter().map(APSolution::sorted_indices).collect();
    assert_eq!(iso, vec![[0, 1, 3], [2, 3, 4], [1, 4, 5]]);

    let o = recap(&["search", "--json", FIB, "--window", "0:30", "--terms", "4"]);
    let d: SearchDocument = serde_json::from_str(&stdout(&o)).unwrap();
    let four: Vec<[i64; 4]> = d.four_term.unwrap().iter().map(|s| s.indices).collect();
    assert_eq!(four, vec![[0, 1, 3, 4], [0, 2, 3, 4]]);
}

#[test]
fn search_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_recap"))
        .args(["search", "--input", "-", "--window", "0:12"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(FIB.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let d: SearchDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(d.window, [0, 12]);
}

#[test]
fn output_is_deterministic() {
    let args = ["search", "--json", FIB, "--window", "-10:40"];
    assert_eq!(stdout(&recap(&args)), stdout(&recap(&args)));
}

#[test]
fn json_round_trip() {
    let o = recap(&["search", "--json", FIB, "--window", "0:20"]);
    let text = stdout(&o);
    let d: SearchDocument = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&d).unwrap();
    assert_eq!(again.trim(), text.trim());
}

#[test]
fn factor_trinomial_exception() {
    let o = recap(&["factor", "--variant", "mid", "7", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let f: TrinomialFactorization = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(f.is_schinzel_exception && f.certified);
    let mut got: Vec<Polynomial> = f.noncyclotomic_factors.clone();
    got.sort_by(|a, b| a.canonical_cmp(b));
    let mut want = vec![Polynomial::from_ints(&[-1, 0, 1, 1]), Polynomial::from_ints(&[1, 1, 0, 1])];
    want.sort_by(|a, b| a.canonical_cmp(b));
    assert_eq!(got, want);
}

#[test]
fn factor_polynomial() {
    let o = recap(&["factor", "--poly", "X^4+X^2-2"]);
    assert_eq!(o.status.code(), Some(0));
    let FactorDocument::Polynomial(p) = serde_json::from_str(&stdout(&o)).unwrap() else {
        panic!("expected a polynomial factorization");
    };
    assert!(p.certified && p.complete);
    let factors: Vec<Polynomial> = p.factors.into_iter().map(|e| e.factor).collect();
    assert!(factors.contains(&Polynomial::from_ints(&[2, 0, 1])));
    assert_eq!(factors.len(), 3);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["factor", "--variant", "mid", "3"],
        vec!["search", "--json", r#"{"coeffs":[]}"#],
        vec!["search", "--json", FIB, "--window", "5"],
        vec!["search", "--json", FIB, "--terms", "5"],
        vec!["factor", "--variant", "mid", "2", "5"],
        vec!["verify-paper", "--lemma-degree-bound", "2"],
        vec!["frobnicate"],
    ] {
        let o = recap(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn window_cap_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_recap"))
        .args(["search", "--json", FIB, "--window", "0:60"])
        .env("RECAP_MAX_WINDOW", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("RECAP_MAX_WINDOW"));
}

#[test]
fn verify_paper_reports_failures_with_exit_1() {
    let o = recap(&["verify-paper", "--lemma-degree-bound", "8", "--power-bound", "100", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("PASS table_bin"));
    assert!(out.contains("FAIL table_ter"));
    assert!(out.trim_end().ends_with("overall: FAIL"));
}

#[test]
fn help_exits_0() {
    let o = recap(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify-paper"));
}
