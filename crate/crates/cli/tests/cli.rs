use std::process::{Command, Output};

use cigon_core::gonality::cg_bound_codim2;
use cigon_core::neffeas::{verify_induction, InductionOptions, InductionTarget};
use cigon_core::{BoundCertificate, FeasibilityVerdict, InductionReport, PrimeDegreeSelection};

fn cigon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cigon"))
        .args(args)
        .env_remove("CIGON_PRECISION")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = cigon(&full);
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn codim2_bound_report() {
    let v = json(&["bound", "codim2", "--n", "2", "--a", "6", "--b", "6"]);
    assert_eq!(v["bound"], "8/3");
    assert_eq!(v["guarantee"], 3);
    assert!(v["hypotheses"]
        .as_array()
        .unwrap()
        .iter()
        .all(|h| h["satisfied"] == true));
}

#[test]
fn ramanujan_and_hilbert_examples() {
    let out = cigon(&["primes", "ramanujan", "--n", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "11");

    let v = json(&["hilbert", "--n", "2", "--codim", "1", "--degrees", "2", "--twist", "2", "--oracle"]);
    assert_eq!((v["nested"].clone(), v["koszul"].clone(), v["series"].clone()), (9.into(), 9.into(), 9.into()));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&cigon(&["bound", "codim2", "--n", "2", "--a", "6", "--b", "6"])), 0);
    // hypothesis violation
    assert_eq!(code(&cigon(&["bound", "codim2", "--n", "2", "--a", "5", "--b", "9"])), 1);
    assert_eq!(code(&cigon(&["verify", "codim2", "--n", "2", "--a", "5", "--b", "12"])), 1);
    // degree below A(3)
    assert_eq!(code(&cigon(&["bound", "surface", "--e", "3", "--degrees", "100,450,500"])), 1);
    // usage errors
    assert_eq!(code(&cigon(&["bound", "codim2", "--n", "2", "--a", "6"])), 3);
    assert_eq!(code(&cigon(&["bound", "codim2", "--n", "2", "--a", "6", "--b", "6", "--bogus"])), 3);
    assert_eq!(code(&cigon(&["bound", "codim2", "--n", "2", "--a", "13/2", "--b", "6"])), 3);
    assert_eq!(code(&cigon(&["decide", "codim2", "--n", "2", "--a", "6", "--b", "6", "--s", "2", "--bruteforce", "--k-max", "0"])), 3);
    assert_eq!(code(&cigon(&["hilbert", "--n", "2", "--codim", "2", "--degrees", "2", "--twist", "1"])), 3);
    assert_eq!(code(&cigon(&[])), 3);
    // help and version are not errors
    assert_eq!(code(&cigon(&["--help"])), 0);
    assert_eq!(code(&cigon(&["--version"])), 0);
    // a completed replay
    assert_eq!(code(&cigon(&["verify", "codim2", "--n", "2", "--a", "12", "--b", "12"])), 0);
}

#[test]
fn errors_name_the_hypothesis() {
    let v = json(&["bound", "codim2", "--n", "2", "--a", "5", "--b", "9"]);
    assert_eq!(v["error"]["kind"], "hypothesis");
    assert_eq!(v["error"]["hypothesis"], "a >= 18n/7");
    let out = cigon(&["bound", "codim2", "--n", "2", "--a", "5", "--b", "9"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("a >= 18n/7"));
}

#[test]
fn fractions_that_are_integers_are_accepted() {
    let v = json(&["bound", "codim2", "--n", "4/2", "--a", "12/2", "--b", "6"]);
    assert_eq!(v["bound"], "8/3");
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["--format", "json", "verify", "codim2", "--n", "3", "--a", "12", "--b", "12"];
    let first = cigon(&args).stdout;
    for _ in 0..3 {
        assert_eq!(cigon(&args).stdout, first);
    }
    let args = ["--format", "json", "verify", "surface", "--e", "3", "--degrees", "168,264,420"];
    assert_eq!(cigon(&args).stdout, cigon(&args).stdout);
}

#[test]
fn json_round_trips() {
    let out = cigon(&["--format", "json", "bound", "codim2", "--n", "3", "--a", "9", "--b", "11"]);
    let cert: BoundCertificate = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert, cg_bound_codim2(3, 9, 11).unwrap());

    let out = cigon(&["--format", "json", "verify", "codim2", "--n", "2", "--a", "10", "--b", "12"]);
    let report: InductionReport = serde_json::from_slice(&out.stdout).unwrap();
    let direct = verify_induction(
        &InductionTarget::Codim2 { n: 2, a: 10, b: 12 },
        &InductionOptions::default(),
    )
    .unwrap();
    assert_eq!(report, direct);

    let out = cigon(&["--format", "json", "decide", "codim2", "--n", "2", "--a", "3", "--b", "3", "--s", "2"]);
    let verdict: FeasibilityVerdict = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(verdict.witness.unwrap().mults, vec![1, 1, 1]);

    let out = cigon(&["--format", "json", "primes", "select", "--e", "3", "--degrees", "400,500"]);
    let sel: PrimeDegreeSelection = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(sel.primes, vec![13, 19]);
    assert!(sel.validate().is_ok());
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["--format", "json", "constants", "--e", "2"];
    let printed = cigon(&args).stdout;
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    let out = cigon(&with_file);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), printed);
    let v: serde_json::Value = serde_json::from_slice(&printed).unwrap();
    assert_eq!(v["B"], "1/23328");
    assert_eq!(v["A"], 34);
}

#[test]
fn precision_from_environment_and_flag() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_cigon"));
        cmd.args(["--format", "json", "genus", "min-power-sum", "--total", "7", "--parts", "3", "--exponent", "3/2"]);
        cmd.env_remove("CIGON_PRECISION");
        if let Some(p) = env {
            cmd.env("CIGON_PRECISION", p);
        }
        if let Some(p) = flag {
            cmd.args(["--precision", p]);
        }
        let v: serde_json::Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v["enclosure"].clone()
    };
    let default = run(None, None);
    let env4 = run(Some("4"), None);
    let flag4 = run(None, Some("4"));
    let overridden = run(Some("4"), Some("12"));
    assert_ne!(default, env4);
    assert_eq!(env4, flag4);
    assert_eq!(overridden, default);
}

#[test]
fn text_output_is_readable() {
    let out = cigon(&["verify", "codim2", "--n", "2", "--a", "6", "--b", "6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("nothing beyond the base case"));
    let out = cigon(&["dimcheck", "first", "--e", "2", "--degrees-y", "6", "--a-e", "18", "--s", "3"]);
    assert!(stdout(&out).contains("209"));
}
