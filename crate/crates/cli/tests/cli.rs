//! End-to-end tests that drive the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use biclique_core::graph::write_graph;
use biclique_core::shapes;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_biclique"))
}

fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn solve_reports_all_objectives_for_an_eight_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "c8.txt", &write_graph(&shapes::cycle(8)));
    let out = bin().arg("solve").arg(&file).args(["--objective", "all"]).output().unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("maxbisizes: {(0, 4), (1, 2), (2, 1), (4, 0)}"), "{text}");
    assert!(text.contains("vertex_max = 4 at (4, 0)"), "{text}");
    assert!(text.contains("edge_max = 2 at (2, 1)"), "{text}");
    assert!(text.contains("balanced = 1 at (2, 1)"), "{text}");
    assert!(text.contains("nontrivial_vertex_max = 3 at (2, 1)"), "{text}");
}

#[test]
fn solve_handles_a_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "k2.txt", "p bip 1 1 1\ne 1 1\n");
    let out = bin().arg("solve").arg(&file).args(["--objective", "vertex"]).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("vertex_max = 2 at (1, 1)"));
}

#[test]
fn solve_rejects_graphs_with_twins() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "k22.txt", &write_graph(&shapes::complete(2, 2)));
    let out = bin().arg("solve").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("twin"), "{}", stderr(&out));
}

#[test]
fn solve_json_carries_the_set_the_objectives_and_a_checked_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "cop7.txt", &write_graph(&shapes::co_path(7)));
    let out = bin().arg("solve").arg(&file).args(["--json", "--witness"]).output().unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["maxbisizes"], serde_json::json!([[0, 3], [1, 2], [2, 1], [4, 0]]));
    assert_eq!(v["objectives"]["vertex_max"], 4);
    assert_eq!(v["objectives"]["edge_max"], 2);
    assert_eq!(v["objectives"]["balanced"], 1);
    assert_eq!(v["objectives"]["nontrivial_vertex_max"], 3);
    // default objective is vertex max, so the witness realizes (4, 0)
    assert_eq!(v["witness"]["blacks"].as_array().unwrap().len(), 4);
    assert_eq!(v["witness"]["whites"].as_array().unwrap().len(), 0);
}

#[test]
fn solve_agrees_with_the_oracle_command() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "cop9.txt", &write_graph(&shapes::co_path(9)));
    let fast = bin().arg("solve").arg(&file).arg("--json").output().unwrap();
    let slow = bin().arg("oracle").arg(&file).arg("--json").output().unwrap();
    assert!(fast.status.success() && slow.status.success());
    let a: Value = serde_json::from_str(&stdout(&fast)).unwrap();
    let b: Value = serde_json::from_str(&stdout(&slow)).unwrap();
    assert_eq!(a["maxbisizes"], b["maxbisizes"]);
    assert_eq!(a["objectives"], b["objectives"]);
}

#[test]
fn decompose_emits_a_prime_root_for_a_path_on_seven_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "p7.txt", &write_graph(&shapes::path(7)));
    let out = bin()
        .arg("decompose")
        .arg(&file)
        .args(["--tree", "canonical", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "prime");
    assert_eq!(v["children"].as_array().unwrap().len(), 7);

    let dot = bin()
        .arg("decompose")
        .arg(&file)
        .args(["--format", "dot"])
        .output()
        .unwrap();
    assert!(dot.status.success());
    assert!(stdout(&dot).starts_with("digraph"));
}

#[test]
fn check_reports_the_three_structural_facts() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "p7.txt", &write_graph(&shapes::path(7)));
    let out = bin().arg("check").arg(&file).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("twin-free: yes"), "{text}");
    assert!(text.contains("star123-free: yes"), "{text}");
    assert!(text.contains("bimodularwidth: 7"), "{text}");
}

#[test]
fn check_detects_an_embedded_star() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "s123.txt", &write_graph(&shapes::star123()));
    let out = bin().arg("check").arg(&file).args(["--star123-free"]).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("star123-free: no"));
}

#[test]
fn gen_writes_a_solvable_instance_with_a_tree_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.txt");
    let out = bin()
        .arg("gen")
        .args(["--n", "14", "--class", "lozin", "--seed", "7"])
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let sidecar = dir.path().join("inst.txt.json");
    assert!(path.exists() && sidecar.exists());
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert_eq!(meta["seed"], 7);
    assert_eq!(meta["class"], "lozin");
    assert!(meta["tree"]["kind"].is_string());

    let solved = bin().arg("solve").arg(&path).output().unwrap();
    assert!(solved.status.success(), "stderr: {}", stderr(&solved));
}

#[test]
fn malformed_input_exits_with_the_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "bad.txt", "p bip 2 2 1\ne 5 1\n");
    let out = bin().arg("solve").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(4), "stderr: {}", stderr(&out));
}

#[test]
fn missing_input_exits_with_the_general_code() {
    let out = bin().arg("solve").arg("/nonexistent/graph.txt").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_prints_one_csv_row_per_size() {
    let out = bin()
        .arg("bench")
        .args(["--family", "sp", "--sizes", "64,128", "--seed", "1"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert_eq!(lines[0], "family,n,m,build_ms,dp_ms,d_size");
    assert!(lines[1].starts_with("sp,") && lines[2].starts_with("sp,"));
}
