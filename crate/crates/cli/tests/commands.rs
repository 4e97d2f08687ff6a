use std::process::{Command, Output};

use nilvar::report::Report;

fn nilvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilvar")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn abelian_profile_has_binomial_betti_numbers() {
    let o = nilvar(&["profile", "A8", "--format", "json"]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows[0]["orbit_dim"], 0);
    assert_eq!(rows[0]["betti"], serde_json::json!([1, 8, 28, 56, 70, 56, 28, 8, 1]));
}

#[test]
fn verify_all_reports_are_reproducible_and_round_trip() {
    let a = nilvar(&["verify-all", "--format", "json"]);
    let b = nilvar(&["verify-all", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.json(), text);
    assert_eq!(a.status.success(), report.passed());
    let rigid = report.checks.iter().find(|c| c.id == "5").unwrap();
    assert!(rigid.summary.contains("components: N1_8_2, N9_8_3, N1_8_4"));
}

#[test]
fn failing_witness_exits_nonzero_with_the_pole() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let o = nilvar(&["check-witness", &format!("{dir}/../../data/corpus/n5_8_2_to_n53_n31.wit")]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("FAIL pole at t = 0"));
    let ok = nilvar(&["check-witness", &format!("{dir}/../../data/corpus/G17_to_A8.wit")]);
    assert!(ok.status.success(), "{}", stdout(&ok));
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.wit");
    std::fs::write(&w, "source A8\ntarget A8\norientation operator\ny1 = q*e1\n").unwrap();
    let o = nilvar(&["check-witness", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(&format!("{}:4:", w.display())), "{err}");
}

#[test]
fn obstruction_pair_and_dot_export() {
    let o = nilvar(&["obstructions", "--pair", "N1_8_3", "G37D"]);
    assert!(stdout(&o).contains("CohomologyDim(4): 30 > 28"));
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("h.dot");
    let h = nilvar(&["hasse", "--dot", dot.to_str().unwrap()]);
    assert!(h.status.success());
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.contains("\"N1_8_2\" [label=\"N1_8_2 (42)\"]"));
    assert!(text.contains("rank=same"));
    assert!(text.contains("\"G17\" -> \"A8\""));
}

#[test]
fn bstable_orientation_switch() {
    let lower = nilvar(&["bstable", "S1", "N3_8_2", "--borel", "lower"]);
    assert!(lower.status.success(), "{}", stdout(&lower));
    let upper = nilvar(&["bstable", "S1", "N3_8_2"]);
    assert!(!upper.status.success());
    assert!(stdout(&upper).contains("first counterexample"));
}

#[test]
fn extension_reports_the_perp_anomaly() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let o = nilvar(&["extend", "--check-perp", &format!("{dir}/../../data/cocycles/b0.coc")]);
    let text = stdout(&o);
    assert!(text.contains("meets the center in dimension 1: e3"), "{text}");
    assert!(text.contains("same invariant profile: n5_1+n3_1"));
}
