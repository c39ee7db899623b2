use std::fs;
use std::process::{Command, Output};

fn pbent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn classify_gf3_squared_passes_reference_checks() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("run.json");
    let csv = dir.path().join("orbits.csv");
    let out = pbent(&[
        "classify",
        "--p",
        "3",
        "--n",
        "2",
        "-q",
        "--json",
        json.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("bent: 18"));
    assert!(!text.contains("FAIL"));

    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["classification"]["bent_count"], 18);
    assert_eq!(report["classification"]["orbits"].as_array().unwrap().len(), 2);
    assert!(report["reference_checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));

    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 3);
    assert!(rows.starts_with("orbit_id,size,"));
}

#[test]
fn classify_output_does_not_depend_on_thread_count() {
    let one = pbent(&["classify", "--p", "3", "--n", "3", "-q", "--jobs", "1"]);
    let seq = pbent(&["classify", "--p", "3", "--n", "3", "-q", "--sequential"]);
    let three = pbent(&["classify", "--p", "3", "--n", "3", "-q", "--jobs", "3"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&seq));
    assert_eq!(stdout(&one), stdout(&three));
    assert!(stdout(&one).contains("bent: 2340"));
}

#[test]
fn degree_bounded_gf5_run_finds_every_bent_function() {
    let out = pbent(&["classify", "--p", "5", "--n", "2", "--degree-bound", "4", "-q", "--sample", "2000"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("candidates: 390625"));
    assert!(text.contains("bent: 1420"));
    assert!(text.contains("0 test disagreements, 0 scan mismatches"));
}

#[test]
fn resumed_run_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("scan.json");
    let fresh = pbent(&["classify", "--p", "3", "--n", "3", "-q", "--checkpoint", ckpt.to_str().unwrap()]);
    assert!(ckpt.exists());
    let resumed = pbent(&["classify", "--p", "3", "--n", "3", "-q", "--resume", ckpt.to_str().unwrap()]);
    assert_eq!(resumed.status.code(), Some(0));
    assert_eq!(stdout(&fresh), stdout(&resumed));

    let other = pbent(&["classify", "--p", "3", "--n", "2", "-q", "--resume", ckpt.to_str().unwrap()]);
    assert_eq!(other.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&other.stderr).contains("different run"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(pbent(&["classify", "--p", "3"]).status.code(), Some(1));
    assert_eq!(pbent(&["no-such-command"]).status.code(), Some(1));
    let big = pbent(&["classify", "--p", "3", "--n", "4", "-q"]);
    assert_eq!(big.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&big.stderr).contains("unsafe-scale"));
    let bad = pbent(&["analyze", "p=3,n=2:0,1,7,1,2,2,1,2,2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position 12"));
}

#[test]
fn help_exits_cleanly() {
    let out = pbent(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("search-bent"));
}

#[test]
fn analyze_writes_dot_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let json = dir.path().join("f.json");
    let out = pbent(&[
        "analyze",
        "--p",
        "5",
        "--n",
        "2",
        "--anf",
        "x0^2+x0*x1",
        "--emit-dot",
        dot.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("unweighted SRG (25, 16, 9, 12)"));
    assert!(text.contains("k(1,1)=4"));
    assert!(text.contains("mu(1,1)=0"));

    let graph = fs::read_to_string(&dot).unwrap();
    assert!(graph.starts_with("graph cayley {"));
    assert_eq!(graph.matches(" -- ").count(), 16 * 25 / 2);

    let dossier: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(dossier["profile"]["is_regular"], true);
    assert_eq!(dossier["wpds"]["is_weighted_pds"], true);
}

#[test]
fn analyze_accepts_values_and_literals() {
    let a = pbent(&["analyze", "p=3,n=2:0,1,1,1,2,2,1,2,2"]);
    let b = pbent(&["analyze", "--p", "3", "--n", "2", "--values", "0,1,1,1,2,2,1,2,2"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("bent yes  weakly regular yes  regular no"));

    let zero = pbent(&["analyze", "--p", "3", "--n", "2", "--values", "0,0,0,0,0,0,0,0,0"]);
    assert!(stdout(&zero).contains("components    9"));
}

#[test]
fn search_bent_writes_a_replayable_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.json");
    let out = pbent(&["search-bent", "--n", "4", "--seed", "42", "--trace", trace.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verified bent: true"));
    let first = fs::read_to_string(&trace).unwrap();

    pbent(&["search-bent", "--n", "4", "--seed", "42", "--trace", trace.to_str().unwrap()]);
    assert_eq!(first, fs::read_to_string(&trace).unwrap());

    let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
    let last = parsed["trace"].as_array().unwrap().last().unwrap();
    assert!(last["walsh"].as_array().unwrap().iter().all(|w| w.as_i64().unwrap().abs() == 4));

    assert_eq!(pbent(&["search-bent", "--n", "3"]).status.code(), Some(1));
}

#[test]
fn lemma34_holds() {
    let out = pbent(&["lemma34"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches(": true").count(), 2);
}

#[test]
fn conjecture_report_runs_over_all_suites() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("c.json");
    let out = pbent(&["conjectures", "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let sections: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let sections = sections.as_array().unwrap();
    assert_eq!(sections.len(), 4);
    for s in &sections[..3] {
        assert_eq!(s["report"]["homogeneity_counterexamples"].as_array().unwrap().len(), 0);
    }
    assert!(!sections[3]["report"]["relaxed_mu_witnesses"].as_array().unwrap().is_empty());
}
