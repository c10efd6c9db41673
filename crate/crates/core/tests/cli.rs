mod common;

use common::star;
use coxspine::splittings::FreeSplitting;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coxspine"));
    cmd.args(args).env_remove("COXSPINE_BUDGET");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn ball_sizes() {
    for (radius, size) in [("1", 6), ("2", 41)] {
        let out = run(&["ball", "--n", "5", "--radius", radius], &[]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout_json(&out)["vertices"].as_array().unwrap().len(), size);
    }
}

#[test]
fn dot_output() {
    let out = run(&["--format", "dot", "ball", "--n", "4", "--radius", "1"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches("--").count(), 4);
}

#[test]
fn canon_identifies_conjugate_stars() {
    let left = write("left.json", &star(&[&[3, 1, 3], &[3, 2, 3], &[3], &[4], &[5]]).to_json());
    let right = write("right.json", &star(&[&[1], &[2], &[3], &[3, 4, 3], &[3, 5, 3]]).to_json());
    let a = run(&["canon", &left], &[]);
    let b = run(&["canon", &right], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_graph_is_a_usage_error() {
    let bad = r#"{"n":3,"vertices":[{"id":0,"label":{"core":1,"conj":[]}},{"id":1,"label":null},{"id":2,"label":{"core":2,"conj":[]}},{"id":3,"label":{"core":3,"conj":[]}}],"edges":[[0,1],[1,2],[2,3]]}"#;
    let path = write("bad.json", bad);
    let out = run(&["canon", &path], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree"));
    let out = run(&["canon", "/nonexistent/file.json"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn act_applies_a_partial_conjugation() {
    let path = write("x6.json", &coxspine::MarkedGraph::standard_zero_star(6).to_json());
    let out = run(&["act", "s(1,6)", &path], &[]);
    assert_eq!(out.status.code(), Some(0));
    let image = write("x6_image.json", &star(&[&[6, 1, 6], &[2], &[3], &[4], &[5], &[6]]).to_json());
    assert_eq!(out.stdout, run(&["canon", &image], &[]).stdout);
    assert_eq!(run(&["act", "s(1,7)", &path], &[]).status.code(), Some(2));
}

#[test]
fn link_and_neighbors() {
    let path = write("x4.json", &coxspine::MarkedGraph::standard_zero_star(4).to_json());
    let out = run(&["link", &path], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["vertices"].as_array().unwrap().len(), 7);
    let out = run(&["neighbors", &path], &[]);
    assert_eq!(stdout_json(&out)["finite"], true);
    let f = write("f4.json", &FreeSplitting::standard_one_edge(4, &[1, 2, 3]).unwrap().to_json());
    let out = run(&["neighbors", &f, "--count", "20"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!((v["finite"].as_bool(), v["count"].as_u64()), (Some(false), Some(20)));
}

#[test]
fn splitting_refine() {
    let a = write("a.json", &FreeSplitting::standard_one_edge(4, &[1]).unwrap().to_json());
    let b = write("b.json", &FreeSplitting::standard_one_edge(4, &[1, 2]).unwrap().to_json());
    let c = write("c.json", &FreeSplitting::standard_one_edge(4, &[2, 3]).unwrap().to_json());
    let out = run(&["splitting-refine", &a, &b], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["edges"].as_array().unwrap().len(), 2);
    assert_eq!(run(&["splitting-refine", &b, &c], &[]).status.code(), Some(1));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "lemma-3-2", "--n", "4"], &[]).status.code(), Some(0));
    assert_eq!(run(&["verify", "lemma-3-4", "--n", "4"], &[]).status.code(), Some(1));
    assert_eq!(run(&["verify", "no-such-suite", "--n", "4"], &[]).status.code(), Some(2));
    assert_eq!(run(&["verify", "degree-law", "--n", "9"], &[]).status.code(), Some(2));
    assert_eq!(run(&["bogus"], &[]).status.code(), Some(2));
}

#[test]
fn deterministic_reports_ignore_threads() {
    let args = |t: &'static str| ["--threads", t, "verify", "lemma-4-3", "--n", "4", "--deterministic"];
    let one = run(&args("1"), &[]);
    let many = run(&args("8"), &[]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn budget_cap_exits_three() {
    let out = run(&["ball", "--n", "5", "--radius", "2"], &[("COXSPINE_BUDGET", "10")]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["--max-vertices", "10", "ball", "--n", "5", "--radius", "2"], &[]);
    assert_eq!(out.status.code(), Some(3));
}
