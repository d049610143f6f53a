//! End-to-end checks of the command-line surface: exit codes, formats,
//! reports and witnesses.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_disk-subcolor"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("disk-subcolor-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn no_arguments_is_a_usage_error() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("usage"));
}

#[test]
fn unknown_command_and_bad_flags() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["gen", "bc"]).status.code(), Some(1), "missing --k");
    assert_eq!(
        run(&["color", "--algo", "nope", "--in", "/nonexistent"]).status.code(),
        Some(1)
    );
}

#[test]
fn bc_generation_feeds_the_oracle() {
    let dir = tmp_dir("bc");
    let inst = dir.join("bc3.txt");
    let out = run(&["gen", "bc", "--k", "3", "--out", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&inst).unwrap();
    assert!(text.starts_with("kind general\n"));
    assert_eq!(text.matches("disk ").count(), 7);

    let oracle = run(&["oracle", "--in", inst.to_str().unwrap()]);
    assert_eq!(oracle.status.code(), Some(0));
    assert_eq!(stdout(&oracle).trim(), "3");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn oracle_on_a_clique_prints_one() {
    let dir = tmp_dir("k5");
    let path = dir.join("k5.txt");
    let mut text = String::from("graph 5\n");
    for i in 0..5u32 {
        for j in (i + 1)..5 {
            text.push_str(&format!("edge {i} {j}\n"));
        }
    }
    std::fs::write(&path, text).unwrap();
    let out = run(&["oracle", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");

    // A guard below the vertex count is an invariant-style failure, not a
    // usage error.
    let guarded = run(&["oracle", "--in", path.to_str().unwrap(), "--limit", "3"]);
    assert_eq!(guarded.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn color_verify_round_trip_and_report() {
    let dir = tmp_dir("roundtrip");
    let inst = dir.join("unit.txt");
    let col = dir.join("unit.col");
    let report = dir.join("unit.report");
    assert_eq!(
        run(&["gen", "random-unit", "--n", "80", "--width", "7", "--seed", "5", "--out", inst.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    let out = run(&[
        "color", "--algo", "unit3approx",
        "--in", inst.to_str().unwrap(),
        "--out", col.to_str().unwrap(),
        "--report", report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report_text = std::fs::read_to_string(&report).unwrap();
    assert!(report_text.contains("algorithm unit3approx"));
    assert!(report_text.contains("kind unit"));
    assert!(report_text.contains("lower_bound "));
    assert!(report_text.ends_with("verdict valid\n"));
    // Wall time goes to stderr, never into the report.
    assert!(!report_text.contains("wall"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wall_ms"));

    let verify = run(&["verify", "--in", inst.to_str().unwrap(), "--coloring", col.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));
    assert_eq!(stdout(&verify).trim(), "verdict valid");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_prints_the_witness_on_a_bad_coloring() {
    let dir = tmp_dir("witness");
    let inst = dir.join("p3.txt");
    let col = dir.join("bad.col");
    std::fs::write(
        &inst,
        "kind unit\ndisk 0 0 0 0.5\ndisk 1 0.9 0 0.5\ndisk 2 1.8 0 0.5\n",
    )
    .unwrap();
    std::fs::write(&col, "0 0\n1 0\n2 0\n").unwrap();
    let out = run(&["verify", "--in", inst.to_str().unwrap(), "--coloring", col.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("monochromatic-p3 0 1 2"));
    assert!(text.contains("verdict invalid"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn parse_errors_exit_one() {
    let dir = tmp_dir("parse");
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "kind unit\ndisk 0 1 2\n").unwrap();
    let out = run(&["oracle", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    // Wrong-kind input for a kind-specific algorithm is a usage error too.
    let general = dir.join("general.txt");
    std::fs::write(&general, "kind general\ndisk 0 0 0 1\n").unwrap();
    let mismatch = run(&["color", "--algo", "isbell7", "--in", general.to_str().unwrap()]);
    assert_eq!(mismatch.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn exact_algo_reports_the_subchromatic_number() {
    let dir = tmp_dir("exact");
    let gadget = dir.join("c4.txt");
    assert_eq!(
        run(&["gen", "gadget", "--variant", "c4", "--out", gadget.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    let out = run(&["color", "--algo", "exact", "--in", gadget.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("kind abstract"));
    assert!(text.contains("colors 2"));
    assert!(text.contains("lower_bound 2"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn geometric_algorithms_reject_abstract_graphs() {
    let dir = tmp_dir("abstract");
    let gadget = dir.join("c5.txt");
    run(&["gen", "gadget", "--variant", "c5", "--out", gadget.to_str().unwrap()]);
    let out = run(&["color", "--algo", "disk-log3", "--in", gadget.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn decompose_outputs() {
    let dir = tmp_dir("decompose");
    let disk = dir.join("disk.txt");
    let delta = dir.join("delta.txt");
    run(&["gen", "random-disk", "--n", "40", "--seed", "3", "--out", disk.to_str().unwrap()]);
    run(&["gen", "random-delta", "--n", "20", "--seed", "3", "--out", delta.to_str().unwrap()]);

    let tree = run(&["decompose", "--tree", "--in", disk.to_str().unwrap()]);
    assert_eq!(tree.status.code(), Some(0));
    let text = stdout(&tree);
    assert!(text.starts_with("decomposition n 40"));
    assert!(text.contains("disk-node depth 0"));
    assert!(text.contains("linear-node depth 0"));

    let sep = run(&["decompose", "--delta", "--in", delta.to_str().unwrap()]);
    assert_eq!(sep.status.code(), Some(0));
    let text = stdout(&sep);
    assert!(text.contains("alpha "));
    assert!(text.contains("v3 ["));

    // --delta needs a delta-kind instance.
    let wrong = run(&["decompose", "--delta", "--in", disk.to_str().unwrap()]);
    assert_eq!(wrong.status.code(), Some(1));
    // Exactly one switch must be given.
    let none = run(&["decompose", "--in", disk.to_str().unwrap()]);
    assert_eq!(none.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn render_writes_svg() {
    let dir = tmp_dir("render");
    let inst = dir.join("inst.txt");
    let col = dir.join("inst.col");
    let svg = dir.join("out.svg");
    run(&["gen", "random-unit", "--n", "12", "--width", "4", "--seed", "8", "--out", inst.to_str().unwrap()]);
    run(&["color", "--algo", "isbell7", "--in", inst.to_str().unwrap(), "--out", col.to_str().unwrap()]);
    let out = run(&[
        "render",
        "--in", inst.to_str().unwrap(),
        "--coloring", col.to_str().unwrap(),
        "--out", svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg "));
    assert_eq!(text.matches("<circle").count(), 12);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn gadget_graph_files_round_trip_through_verify() {
    let dir = tmp_dir("gadget");
    let file = dir.join("matched.txt");
    run(&["gen", "gadget", "--variant", "matched-cliques", "--n", "3", "--out", file.to_str().unwrap()]);
    let col = dir.join("matched.col");
    // Color the two cliques with two colors: a valid 2-subcoloring.
    std::fs::write(&col, "0 0\n1 0\n2 0\n3 1\n4 1\n5 1\n").unwrap();
    let out = run(&["verify", "--in", file.to_str().unwrap(), "--coloring", col.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let _ = std::fs::remove_dir_all(&dir);
}
