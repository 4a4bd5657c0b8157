//! End-to-end checks of the command-line surface: commands, exit codes,
//! diagnostics and byte-exact output.

mod common;

use std::fs;
use std::path::PathBuf;

use common::run_cli;

fn write_temp(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, content).unwrap();
    path
}

#[test]
fn check_reports_counts() {
    let (code, out, _) = run_cli(&["check", "figure1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "figure1: 13 nodes, 35 sentences\n");

    let (code, out, _) = run_cli(&["check", "extended"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("extended: 17 nodes"), "{out}");
}

#[test]
fn check_reports_syntax_position_and_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_temp(&dir, "broken.dtr", "Foo:\n    <a == x.\n");
    let (code, out, err) = run_cli(&["check", file.to_str().unwrap()]);
    assert_eq!(code, 2, "{out}{err}");
    assert!(err.contains("2:") && err.contains("error"), "{err}");
}

#[test]
fn missing_file_exits_two() {
    let (code, _, err) = run_cli(&["check", "/nonexistent/theory.dtr"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"), "{err}");
}

#[test]
fn query_works_on_a_file_theory() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_temp(
        &dir,
        "tiny.dtr",
        "Base: <> == undef <mood> == calm.\nLeaf: <> == Base.\n",
    );
    let (code, out, _) = run_cli(&["query", file.to_str().unwrap(), "Leaf", "<mood>"]);
    assert_eq!(code, 0);
    assert_eq!(out, "calm\n");
}

#[test]
fn query_output_is_stable_across_runs() {
    let first = run_cli(&["query", "extended", "Give", "<right right root>"]);
    let second = run_cli(&["query", "extended", "Give", "<right right root>"]);
    assert_eq!(first, second);
    assert_eq!(first.1, "to\n");
}

#[test]
fn query_depth_limit_is_configurable() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_temp(&dir, "cyclic.dtr", "N: <a> == N:<a>.\n");
    let (code, _, err) = run_cli(&["query", file.to_str().unwrap(), "N", "<a>"]);
    assert_eq!(code, 1);
    assert!(err.contains("500"), "{err}");

    let (code, _, err) = run_cli(&[
        "query",
        file.to_str().unwrap(),
        "N",
        "<a>",
        "--max-depth",
        "10",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("10"), "{err}");
}

#[test]
fn entries_on_extended() {
    let (code, out, _) = run_cli(&["entries", "extended"]);
    assert_eq!(code, 0);
    assert_eq!(out, "Die\nEat\nGive\nWill\nSleep\n");
}

#[test]
fn alt_flag_matches_the_dative_rule() {
    let (_, by_rule, _) = run_cli(&["tree", "extended", "Give", "--rule", "dative"]);
    let (code, by_alt, _) = run_cli(&["tree", "extended", "Give", "--alt", "dative"]);
    assert_eq!(code, 0);
    assert_eq!(by_rule, by_alt);
}

#[test]
fn alt_without_definition_exits_one() {
    let (code, _, err) = run_cli(&["tree", "extended", "Die", "--alt", "dative"]);
    assert_eq!(code, 1);
    assert!(err.contains("no tree"), "{err}");
}

#[test]
fn unknown_rule_exits_two() {
    let (code, _, err) = run_cli(&["tree", "extended", "Give", "--rule", "mystery"]);
    assert_eq!(code, 2);
    assert!(err.contains("mystery"), "{err}");
}

#[test]
fn dative_on_intransitive_exits_one() {
    let (code, _, err) = run_cli(&["tree", "extended", "Die", "--rule", "dative"]);
    assert_eq!(code, 1);
    assert!(err.contains("not applicable"), "{err}");
}

#[test]
fn test_command_reports_mismatches_and_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let golden = write_temp(
        &dir,
        "cases.golden",
        "Q Give <cat> => v\nQ Give <cat> => verb\nT Die => (s np! (vp v@=die))\n",
    );
    let (code, out, _) = run_cli(&["test", "extended", golden.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(out.contains("PASS Q Give <cat>"), "{out}");
    assert!(
        out.contains("FAIL Q Give <cat>: expected `verb`, got `v`"),
        "{out}"
    );
    assert!(out.ends_with("2 passed, 1 failed\n"), "{out}");
}

#[test]
fn test_command_rejects_malformed_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let golden = write_temp(&dir, "bad.golden", "Q Give\n");
    let (code, _, err) = run_cli(&["test", "extended", golden.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn tree_with_overlay_only() {
    let (code, out, _) = run_cli(&["tree", "extended", "Eat", "--set", "<right form>=null"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(s np! (vp v@=eat np{form=null}!))\n");
}

#[test]
fn duplicate_set_paths_exit_one() {
    let (code, _, err) = run_cli(&[
        "tree",
        "extended",
        "Eat",
        "--rule",
        "passive",
        "--set",
        "<form>=passive",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("duplicate overlay path"), "{err}");
}
