use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use treestack::document::{automaton_from_json, automaton_to_json, group_spec_from_json, group_spec_to_json};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treestack"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn accept_exit_codes() {
    let z = fixture("z.json");
    let o = run(&["accept", path(&z), "tT"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("accepted", Some(0)));
    let o = run(&["accept", path(&z), "t"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("rejected", Some(1)));
    let o = run(&["accept", path(&z), "ttTT", "--max-configs", "2"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("budget-exhausted", Some(2)));
}

#[test]
fn accept_with_separator() {
    let o = run(&["accept", path(&fixture("z.json")), "t,T,T,t", "--sep", ","]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_file_names_field() {
    let o = run(&["accept", path(&fixture("malformed.json")), "t"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("$.transitions[0].pred.kind"), "{}", stderr(&o));
}

#[test]
fn unknown_letter_is_an_error() {
    let o = run(&["accept", path(&fixture("z.json")), "tx"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn trace_lists_run() {
    let o = run(&["accept", path(&fixture("z.json")), "tT", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "state | read | pred | instr | pointer | label");
    assert!(lines[1].starts_with("S | - | - | - |"));
    assert!(lines[lines.len() - 2].starts_with("q_f | ε |"));
    assert_eq!(lines[lines.len() - 1], "accepted");
    assert!(lines[1..lines.len() - 1].iter().all(|l| l.split(" | ").count() == 6));
}

#[test]
fn construct_free_product_then_accept() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fp.json");
    let o = run(&["construct", "free-product", path(&fixture("free_product.json")), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["accept", out.to_str().unwrap(), "aAbB"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["accept", out.to_str().unwrap(), "abAB"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn construct_is_deterministic() {
    for (kind, spec) in [("amalgam", "amalgam.json"), ("hnn", "hnn.json")] {
        let a = run(&["construct", kind, path(&fixture(spec))]);
        let b = run(&["construct", kind, path(&fixture(spec))]);
        assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn construct_single_vertex_graph() {
    let o = run(&["construct", "graph", path(&fixture("graph_single.json"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), fs::read_to_string(fixture("z.json")).unwrap());
}

#[test]
fn construct_rejects_bad_table() {
    let o = run(&["construct", "free-product", path(&fixture("bad_table.json"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("not-a-group at $.right"), "{}", stderr(&o));
}

#[test]
fn construct_rejects_wrong_kind() {
    let o = run(&["construct", "hnn", path(&fixture("free_product.json"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn compare_z_full_sweep() {
    let o = run(&["compare", path(&fixture("z.json")), path(&fixture("integers.json")), "--max-len", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("checked: 8191, matched: 8191, mismatched: 0, budget-exhausted: 0"));
}

#[test]
fn compare_empty_length() {
    let o = run(&["compare", path(&fixture("z.json")), path(&fixture("integers.json")), "--max-len", "0"]);
    assert!(stdout(&o).contains("checked: 1,"));
}

#[test]
fn compare_reports_broken_automaton() {
    let mut m = automaton_from_json(&fs::read_to_string(fixture("z.json")).unwrap()).unwrap();
    let i = m
        .transitions
        .iter()
        .position(|t| m.describe_instruction(&t.instruction) == "down" && t.read.is_some())
        .unwrap();
    m.transitions.remove(i);
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    fs::write(&broken, automaton_to_json(&m)).unwrap();
    let o = run(&["compare", broken.to_str().unwrap(), path(&fixture("integers.json")), "--max-len", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("mismatch: "));
    assert!(!out.contains("mismatched: 0"));
}

#[test]
fn compare_sample_prints_seed() {
    let (z, ints) = (fixture("z.json"), fixture("integers.json"));
    let args = [
        "compare",
        path(&z),
        path(&ints),
        "--sample",
        "50",
        "--seed",
        "7",
        "--max-len",
        "10",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).starts_with("seed: 7\n"));
    assert!(stdout(&a).contains("checked: 50,"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn compare_rejects_alphabet_mismatch() {
    let o = run(&["compare", path(&fixture("z.json")), path(&fixture("free_product.json"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn analyze_reports() {
    let o = run(&["analyze", path(&fixture("z.json")), "--k", "1"]);
    let out = stdout(&o);
    assert!(out.contains("cycle-free: yes"));
    let bound: usize = out
        .lines()
        .find_map(|l| l.strip_prefix("uniform visit bound (k = 1): "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(bound > 0);
    let o = run(&["analyze", path(&fixture("id_loop.json"))]);
    assert!(stdout(&o).contains("cycle-free: no, witness: "), "{}", stdout(&o));
}

#[test]
fn mcfg_membership() {
    let g = fixture("anbncn.json");
    let o = run(&["mcfg", path(&g), "abc"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("accepted", Some(0)));
    let o = run(&["mcfg", path(&g), "acb"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("rejected", Some(1)));
    let o = run(&["mcfg", path(&g), ""]);
    assert_eq!(stdout(&o).trim(), "accepted");
}

#[test]
fn fixtures_round_trip() {
    let text = fs::read_to_string(fixture("z.json")).unwrap();
    assert_eq!(automaton_to_json(&automaton_from_json(&text).unwrap()) + "\n", text);
    for name in ["integers.json", "free_product.json", "amalgam.json", "hnn.json", "graph_single.json"] {
        let spec = group_spec_from_json(&fs::read_to_string(fixture(name)).unwrap()).unwrap();
        assert_eq!(group_spec_from_json(&group_spec_to_json(&spec)).unwrap(), spec, "{name}");
    }
}
