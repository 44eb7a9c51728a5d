use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use oppsym::{generated_group_order, Permutation};
use serde_json::Value;

const TRIANGLE: &str = "3 3 1\n0 0 0\n0 1\n1 2\n0 2\n";
const TWIN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/twin_halves.graph");

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_opp-symmetry"))
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("oppsym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn triangle_text_output() {
    let o = run_stdin(&["--mode=enhanced"], TRIANGLE);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(&lines[..2], ["(1 2)", "(0 1)"]);
    assert!(lines.contains(&"group_order 6"));
    assert!(lines.contains(&"generators 2"));
}

#[test]
fn reads_a_file_argument() {
    let path = temp_file("triangle.g", TRIANGLE);
    let o = bin().arg(&path).output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("group_order 6"));
}

#[test]
fn compare_mode_reports_both_conflict_counts() {
    let o = bin().args(["--mode=compare", TWIN]).output().unwrap();
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("conflicts baseline=16 enhanced=4"), "{out}");
    assert!(out.contains("histogram "));

    let o = bin()
        .args(["--mode=compare", "--json", TWIN])
        .output()
        .unwrap();
    let v = json(&o);
    assert_eq!(v["mode"], "compare");
    assert_eq!(v["conflicts"], 4);
    assert_eq!(v["baseline"]["conflicts"], 16);
    let total: u64 = v["conflict_depth_histogram"]
        .as_object()
        .unwrap()
        .values()
        .map(|c| c.as_u64().unwrap())
        .sum();
    assert_eq!(total, 16);
}

#[test]
fn empty_formula_on_two_variables() {
    let o = run_stdin(&["--cnf", "--mode=enhanced"], "p cnf 2 0\n");
    assert!(o.status.success());
    assert!(stdout(&o).contains("group_order 8"));
}

#[test]
fn json_has_the_documented_fields() {
    let o = run_stdin(
        &["--json", "--mode=baseline", "--heuristic=largest"],
        TRIANGLE,
    );
    let v = json(&o);
    for key in [
        "n",
        "m",
        "k",
        "mode",
        "heuristic",
        "group_order",
        "generators",
        "nodes",
        "conflicts",
        "bad_leaves",
        "time_ms",
        "complete",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["mode"], "baseline");
    assert_eq!(v["heuristic"], "largest");
    assert_eq!(v["group_order"], "6");
    assert!(v.get("conflict_depth_histogram").is_none());
}

#[test]
fn json_generators_regenerate_the_group() {
    let petersen = "10 15 1\n0 0 0 0 0 0 0 0 0 0\n\
                    0 1\n1 2\n2 3\n3 4\n0 4\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n6 9\n6 8\n5 8\n";
    for heuristic in ["first", "largest", "smallest-nonsingleton"] {
        let o = run_stdin(&["--json", &format!("--heuristic={heuristic}")], petersen);
        let v = json(&o);
        let gens: Vec<Permutation> = v["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| Permutation::parse_cycles(g.as_str().unwrap(), 10).unwrap())
            .collect();
        let order = generated_group_order(10, &gens).unwrap();
        assert_eq!(order.to_string(), v["group_order"].as_str().unwrap());
        assert_eq!(v["group_order"], "120");
    }
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&bin().arg(TWIN).output().unwrap());
    let v = json(&bin().args(["--json", TWIN]).output().unwrap());
    let gens: Vec<&str> = v["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_str().unwrap())
        .collect();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(&lines[..gens.len()], gens.as_slice());
    for key in ["nodes", "conflicts", "bad_leaves", "complete"] {
        assert!(
            lines.contains(&format!("{key} {}", v[key]).as_str()),
            "{key}"
        );
    }
    let order = format!("group_order {}", v["group_order"].as_str().unwrap());
    assert!(lines.contains(&order.as_str()));
}

#[test]
fn parse_errors_exit_with_1() {
    let o = run_stdin(&[], "3 1 1\n0 0 0\n0 7\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(o.stdout, b"");

    let o = run_stdin(&["--cnf"], "p cnf 1 1\n2 0\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_arguments_exit_with_1() {
    let o = bin().arg("--mode=fast").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = bin().arg("/definitely/not/here.g").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = bin().arg("--help").output().unwrap();
    assert!(o.status.success());
}

#[test]
fn exhausted_budget_exits_with_2_and_flags_the_output() {
    let o = bin()
        .args(["--json", "--max-nodes=3", TWIN])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["complete"], false);
    assert!(v["nodes"].as_u64().unwrap() <= 3);
}

#[test]
fn trace_goes_to_stderr() {
    let plain = run_stdin(&[], TRIANGLE);
    let traced = run_stdin(&["--trace"], TRIANGLE);
    assert_eq!(plain.stdout.len(), traced.stdout.len());
    let log = String::from_utf8(traced.stderr).unwrap();
    assert!(log.contains("map 0 -> 1"));
    assert!(log.contains("discrete leaf (1 2) automorphism"));
}
