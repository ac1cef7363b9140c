use std::path::PathBuf;
use std::process::{Command, Output};

use sasaki::report::VerificationReport;

fn sasaki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sasaki")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 output")
}

fn report(args: &[&str]) -> (Option<i32>, VerificationReport) {
    let o = sasaki(args);
    let r = VerificationReport::from_json(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stderr(&o)));
    (o.status.code(), r)
}

fn spec_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const EXAMPLE: &str = r#"{
  "name": "example-from-file",
  "dimension": 3,
  "coordinates": ["x", "y", "z"],
  "domain_constraints": ["z"],
  "frame": [["z", "0", "0"], ["0", "z", "0"], ["0", "0", "z"]],
  "phi": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]],
  "xi": ["0", "0", "1"]
}"#;

#[test]
fn builtin_example_text_output_exits_zero() {
    let o = sasaki(&["verify", "paper-example"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("result: consistent"), "{text}");
    assert!(text.contains("d-eta-vanishes"), "{text}");
}

#[test]
fn json_output_round_trips_and_matches_exit_code() {
    let o = sasaki(&["verify", "paper-example", "--json"]);
    let text = stdout(&o);
    let r = VerificationReport::from_json(&text).unwrap();
    assert_eq!(r.to_json() + "\n", text);
    assert_eq!(o.status.code(), Some(r.exit_code()));
    assert!(r.consistent);
    assert_eq!(r.curvature.scalar, "-6");
    assert_eq!(r.theorems.len(), 9);
}

#[test]
fn flat_builtin_is_consistent() {
    let (code, r) = report(&["verify", "flat-example", "--json"]);
    assert_eq!(code, Some(0));
    assert!(r.curvature.flat);
}

#[test]
fn spec_file_without_metric_defaults_to_identity() {
    let path = spec_file("example.json", EXAMPLE);
    let (code, r) = report(&["verify", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, Some(0));
    assert_eq!(r.name, "example-from-file");
    assert!(!r.notes.is_empty());
    let (_, builtin) = report(&["verify", "paper-example", "--json"]);
    assert_eq!(r.curvature, builtin.curvature);
    assert_eq!(r.theorems, builtin.theorems);
    assert_eq!(r.soliton, builtin.soliton);
}

#[test]
fn invalid_structure_is_reported_not_rejected() {
    let broken = EXAMPLE.replace(r#"[["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]"#, r#"[["0", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]"#);
    let path = spec_file("zero-phi.json", &broken);
    let (code, r) = report(&["verify", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, Some(0));
    assert!(!r.structure.valid);
    assert!(r.findings.iter().any(|f| f.id == "structure-invalid"));
}

#[test]
fn quasi_conformal_override() {
    let (code, r) = report(&["verify", "paper-example", "--json", "--quasi-conformal", "1,-1"]);
    assert_eq!(code, Some(0));
    assert_eq!(r.quasi_conformal, ["1".to_string(), "-1".to_string()]);
    let v = r.verdict("xi-quasi-conformally-flat").unwrap();
    assert_eq!((v.lhs, v.rhs), (Some(true), Some(true)));
}

#[test]
fn potential_field_override() {
    let (code, r) = report(&["verify", "paper-example", "--json", "--potential-field", "0,0,z"]);
    assert_eq!(code, Some(0));
    let v = r.verdict("colinear-potential-constant").unwrap();
    assert_eq!((v.lhs, v.rhs, v.consistent), (Some(false), Some(false), Some(true)));
    let (code, r) = report(&["verify", "paper-example", "--json", "--potential-field", "xi"]);
    assert_eq!(code, Some(0));
    assert!(r.potential_soliton.is_some());
}

#[test]
fn input_errors_exit_two() {
    let malformed = spec_file("malformed.json", "{ \"name\": ");
    let missing = spec_file("missing-xi.json", &EXAMPLE.replace(",\n  \"xi\": [\"0\", \"0\", \"1\"]", ""));
    let bad_entry = spec_file("bad-entry.json", &EXAMPLE.replace("[\"0\", \"z\", \"0\"]", "[\"0\", \"z +\", \"0\"]"));
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "no-such-builtin-or-file"],
        vec!["verify", malformed.to_str().unwrap()],
        vec!["verify", missing.to_str().unwrap()],
        vec!["verify", bad_entry.to_str().unwrap()],
        vec!["verify", "paper-example", "--quasi-conformal", "1"],
        vec!["verify", "paper-example", "--potential-field", "z"],
    ];
    for args in cases {
        let o = sasaki(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).starts_with("error: "), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?}");
    }
    let missing_err = stderr(&sasaki(&["verify", missing.to_str().unwrap()]));
    assert!(missing_err.contains("xi"), "{missing_err}");
    let entry_err = stderr(&sasaki(&["verify", bad_entry.to_str().unwrap()]));
    assert!(entry_err.contains("frame[1][1]"), "{entry_err}");
}
