use std::process::{Command, Output};

use spiralcolor::coloring::{verify_coloring, ColoringDocument, FailureWitness};
use spiralcolor::genlab::corpus_entry;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiralcolor")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

#[test]
fn errera_pure_witness_then_repair() {
    let g = corpus_entry("errera").unwrap().graph();
    let pure = run(&["color", "--algo", "spiral", "corpus/errera"]);
    assert_eq!(pure.status.code(), Some(1));
    let w = FailureWitness::from_json(stdout(&pure)).unwrap();
    assert!(!w.partial.is_colored(w.stuck_vertex));

    let fixed = run(&["color", "--algo", "spiral", "--kempe-repair", "corpus/errera"]);
    assert_eq!(fixed.status.code(), Some(0));
    let doc: ColoringDocument = serde_json::from_str(stdout(&fixed)).unwrap();
    assert!(doc.verification.ok);
    assert!(verify_coloring(&g, &doc.colors).ok);
}

#[test]
fn malformed_document_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "n 4\nouter 0 1 2\n0: 1 3 2\n1: 0 2 three\n").unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    assert_eq!(report["ok"], false);
    assert_eq!(report["violations"][0]["line"], 4);
}

#[test]
fn fuzz_is_byte_identical() {
    let args = ["fuzz", "--count", "100", "--nmax", "12", "--seed", "1"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["color", "--nope", "corpus/k4"]).status.code(), Some(2));
    assert_eq!(run(&["chains", "corpus/missing"]).status.code(), Some(2));
    assert_eq!(run(&["chains", "/no/such/file"]).status.code(), Some(2));
}

#[test]
fn default_seed_is_printed() {
    let o = run(&["gen", "--n", "20", "--flips", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed: 0"));
    let again = run(&["gen", "--n", "20", "--flips", "10", "--seed", "0"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn replay_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["color", "corpus/kittell", "--witness-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    assert_eq!(run(&["replay", file.to_str().unwrap()]).status.code(), Some(1));

    let mut w = FailureWitness::from_json(&std::fs::read_to_string(&file).unwrap()).unwrap();
    w.stuck_vertex = spiralcolor::planar::VertexId(0);
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, w.to_json()).unwrap();
    assert_eq!(run(&["replay", tampered.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_flags_a_bad_coloring() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, "[1, 1, 2, 3]").unwrap();
    let o = run(&["verify", "corpus/k4", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::write(&path, "[1, 2, 3, 4]").unwrap();
    assert_eq!(run(&["verify", "corpus/k4", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn chains_document_lists_separators() {
    let o = run(&["chains", "corpus/icosahedron"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    let chains = doc["chains"].as_array().unwrap().len();
    assert_eq!(doc["theta_separators"].as_array().unwrap().len(), chains - 1);
    let covered: usize = doc["chains"].as_array().unwrap().iter().map(|c| c.as_array().unwrap().len()).sum();
    assert_eq!(covered, 12);
}

#[test]
fn export_svg_and_dot() {
    let svg = run(&["export", "corpus/octahedron", "--format", "svg"]);
    assert_eq!(svg.status.code(), Some(0));
    let text = stdout(&svg);
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("class=\"chain\"").count(), 1);
    assert!(["yellow", "blue", "red"].iter().all(|c| text.contains(c)));

    let dot = run(&["export", "corpus/k4", "--format", "dot"]);
    let text = stdout(&dot);
    assert!(text.starts_with("graph spiral"));
    assert_eq!(text.matches("penwidth=3").count(), 3);
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k4.json");
    let o = run(&["color", "--algo", "exact", "corpus/k4", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let doc: ColoringDocument = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(doc.colors.colors_used().len(), 4);
}
