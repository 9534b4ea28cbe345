use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;
use trigcert::cli::{self, EXIT_OK, EXIT_REFUTED, EXIT_UNDECIDED, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("trigcert").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn coefficient_tables() {
    let (code, out, _) = run(&["coeffs", "psi", "0..5"]);
    assert_eq!(code, EXIT_OK);
    let exact: Vec<&str> = out.lines().map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(
        exact,
        [
            "8",
            "8*pi^-1",
            "-8/3 + 16*pi^-2",
            "-8/3*pi^-1 + 32*pi^-3",
            "-8/45 - 16/3*pi^-2 + 64*pi^-4",
            "-8/45*pi^-1 - 32/3*pi^-3 + 128*pi^-5"
        ]
    );
    let (_, out, _) = run(&["coeffs", "steckin_alpha", "1..2"]);
    assert!(out.starts_with("1\t1 - 4*pi^-2\t"));
    assert!(out.lines().nth(1).unwrap().starts_with("2\t-8*pi^-3\t"));
    let (_, out, _) = run(&["coeffs", "sinc", "0..0"]);
    assert!(out.starts_with("0\t1\t"));
    let (code, _, err) = run(&["coeffs", "bogus", "0..1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("bogus"));
    assert_eq!(run(&["coeffs", "tan", "0..3"]).0, EXIT_USAGE);
}

#[test]
fn coefficient_csv_and_json() {
    let (_, out, _) = run(&["coeffs", "cot", "1..3", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("k,exact,lo,hi"));
    assert_eq!(lines.count(), 3);
    let (_, out, _) = run(&["coeffs", "C", "1..2", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["series"], "becker_stark_C");
    assert_eq!(v["coefficients"][0]["exact"], "pi^2");
}

#[test]
fn prove_exit_codes() {
    assert_eq!(run(&["prove", "T2L(sinc) < sinc on (0,pi/2)"]).0, EXIT_OK);
    let (code, out, _) = run(&["prove", "sinc < T2L(sinc) on (0,pi/2)"]);
    assert_eq!(code, EXIT_REFUTED);
    assert!(out.contains("witness at"));
    assert_eq!(run(&["prove", "Q4 < T6L(sinc) on (0,pi/2)"]).0, EXIT_OK);
    assert_eq!(run(&["prove", "sinc < on (0,pi/2)"]).0, EXIT_USAGE);
    assert_eq!(run(&["prove", "tan < 1 on (0,2)"]).0, EXIT_USAGE);
    // margin 1e-9 at x = 1/2 needs more than one bisection
    let tight = "x - x^2 < 1/4 + 1/1000000000 on (0,1)";
    assert_eq!(run(&["prove", tight]).0, EXIT_OK);
    assert_eq!(run(&["--max-depth", "1", "prove", tight]).0, EXIT_UNDECIDED);
}

#[test]
fn depth_budget_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_trigcert");
    let tight = "x - x^2 < 1/4 + 1/1000000000 on (0,1)";
    let status = Command::new(bin).args(["prove", tight]).env("TRIGCERT_MAX_DEPTH", "1").output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_UNDECIDED));
    let status = Command::new(bin).args(["prove", tight]).env_remove("TRIGCERT_MAX_DEPTH").output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_OK));
    let status = Command::new(bin).args(["frobnicate"]).output().unwrap().status;
    assert_eq!(status.code(), Some(EXIT_USAGE));
}

#[test]
fn certificate_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["prove", "sinc < 1 on (0,pi/2)", "--format", "json", "--leaves", "--output", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["status"], "verified");
    assert!(v["leaves"].is_array());
    assert_eq!(v["endpoints"].as_array().unwrap().len(), 2);
}

#[test]
fn bounds_listing() {
    let (code, out, _) = run(&["bounds", "S1L", "F1U", "--verify"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches("verified").count(), 2);
    let (_, out, _) = run(&["bounds", "R1", "--var", "x", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["bound"]["name"], "R1");
    assert_eq!(run(&["bounds", "nonsense"]).0, EXIT_USAGE);
    assert_eq!(run(&["bounds", "S1L", "--var", "q"]).0, EXIT_USAGE);
}

#[test]
fn suite_filters_and_formats() {
    let (code, out, _) = run(&["suite", "--filter", "T5", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("case,kind,claim,status,leaf_count,max_depth,witness,detail"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().all(|r| r.starts_with("T5,")));
    assert_eq!(rows.iter().filter(|r| r.contains("mixed_trig")).count(), 2);

    let (code, out, _) = run(&["suite", "--filter", "CONJ*"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let ids: Vec<&str> = v["cases"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["CONJ1a", "CONJ1b"]);
    assert_eq!(v["config"]["grid_points"], 1000);

    let (code, out, _) = run(&["suite", "--filter", "no-such-case"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["cases"].as_array().unwrap().is_empty());

    let (code, _, _) = run(&["suite", "--filter", "CROSS-S5L"]);
    assert_eq!(code, EXIT_REFUTED);
}

#[test]
fn suite_report_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (_, stdout, _) = run(&["suite", "--filter", "S*", "--grid-points", "50"]);
    let (_, out, _) = run(&["suite", "--filter", "S*", "--grid-points", "50", "--output", path.to_str().unwrap()]);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    let (_, timed, _) = run(&["suite", "--filter", "S1", "--timings"]);
    let v: Value = serde_json::from_str(&timed).unwrap();
    assert!(v["cases"][0]["elapsed_ms"].is_u64());
}

#[test]
fn invalid_budgets_are_usage_errors() {
    assert_eq!(run(&["--max-depth", "0", "suite"]).0, EXIT_USAGE);
    assert_eq!(run(&["--grid-points", "0", "suite"]).0, EXIT_USAGE);
    assert_eq!(run(&["--min-width", "-1", "prove", "sinc < 1 on (0,1)"]).0, EXIT_USAGE);
    assert_eq!(run(&["conjecture", "--level", "0"]).0, EXIT_USAGE);
}

fn parse_csv(out: &str) -> Vec<Vec<f64>> {
    out.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

#[test]
fn grid_of_the_classical_sinc_bounds() {
    let (code, out, _) = run(&["grid", "S1L", "sinc", "S1U", "-n", "101"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("x,S1L,sinc,S1U"));
    let rows = parse_csv(&out);
    assert_eq!(rows.len(), 101);
    assert!(rows.iter().all(|r| r[1] <= r[2] && r[2] <= r[3]));
    assert_eq!(rows[0][0], 0.0);
    assert!((rows[100][0] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
}

#[test]
fn grid_gap_of_the_remainder_bounds_shrinks_toward_the_pole() {
    let (_, out, _) = run(&["grid", "F1L", "steckin_f", "F1U", "-n", "41", "--from", "pi/4"]);
    let rows = parse_csv(&out);
    let gaps: Vec<f64> = rows.iter().map(|r| r[3] - r[1]).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    assert!(gaps.last().unwrap().abs() < 1e-12);
}

#[test]
fn grid_edge_cases() {
    assert_eq!(run(&["grid"]).1, "x\n");
    let (code, out, err) = run(&["grid", "tan", "-n", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().last().unwrap().ends_with(",NaN"));
    assert!(err.contains("warning"));
    assert_eq!(run(&["grid", "sinc", "-n", "1"]).0, EXIT_USAGE);
}

#[test]
fn conjecture_command() {
    let (code, out, _) = run(&["conjecture", "--order", "12", "--level", "2", "--grid-points", "100"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cases"][0]["params"]["M"], 12);
    assert_eq!(v["cases"][1]["claims"].as_array().unwrap().len(), 1);
}

const SIDES: &[&str] =
    &["sinc", "S1L", "S1U", "T2L(sinc)", "x", "1/2", "2/pi", "t", "F1L", "steckin_f", "psi", "zz(", "T2U(sinc)"];
const RANGES: &[&str] = &["(0,pi/2)", "(0, 1)", "(1/10, 1)", "(1,0)", "(0,4)", "[0,1]", "(0,pi/2) in t", "(0,1) in q"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Malformed claims exit with 2; well-formed ones map the verdict onto 0, 1 or 3.
    #[test]
    fn exit_code_contract(l in 0..SIDES.len(), r in 0..SIDES.len(), i in 0..RANGES.len(), sep in prop::bool::ANY) {
        let op = if sep { " < " } else { " <= " };
        let claim = format!("{}{op}{} on {}", SIDES[l], SIDES[r], RANGES[i]);
        let (code, out, err) = run(&["prove", &claim, "--max-depth", "20"]);
        prop_assert!([EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_UNDECIDED].contains(&code));
        let malformed = !sep || SIDES[l] == "zz(" || SIDES[r] == "zz(" || RANGES[i] == "[0,1]"
            || RANGES[i].ends_with("in q") || RANGES[i] == "(1,0)";
        if malformed {
            prop_assert_eq!(code, EXIT_USAGE, "{}", claim);
            prop_assert!(!err.is_empty());
        } else if code != EXIT_USAGE {
            let expected = match out.split(':').next().unwrap() {
                "verified" => EXIT_OK,
                "refuted" => EXIT_REFUTED,
                _ => EXIT_UNDECIDED,
            };
            prop_assert_eq!(code, expected, "{}", claim);
        }
    }
}
