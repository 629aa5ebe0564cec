use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn maxcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxcut")).args(args).output().expect("binary runs")
}

fn with_file(text: &str, args: &[&str]) -> Output {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap().to_owned();
    let mut all: Vec<&str> = args.to_vec();
    all.push(&path);
    maxcut(&all)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const FIXTURES: [&str; 8] =
    ["k5.txt", "k33.txt", "k6.txt", "k5_realized.txt", "touch.txt", "random1.txt", "random2.txt", "random3.txt"];

#[test]
fn planar_instance_needs_one_base_case() {
    let out = with_file("nodes 2\nedge 0 0 1 1.5\n", &["solve", "--json"]);
    let report = json(&out);
    assert_eq!(report["value"], "1.5");
    assert_eq!(report["stats"]["base_cases"], 1);
    assert_eq!(report["stats"]["branches"], 0);
    assert_eq!(report["witness"], serde_json::json!([1, 0]));
}

#[test]
fn known_optima() {
    for (file, value) in [("k5.txt", "6"), ("k33.txt", "9"), ("k6.txt", "9")] {
        let report = json(&maxcut(&["solve", "--json", fixture(file).to_str().unwrap()]));
        assert_eq!(report["value"], value, "{file}");
    }
}

#[test]
fn solve_and_oracle_agree_on_fixtures() {
    for file in FIXTURES {
        let path = fixture(file);
        let path = path.to_str().unwrap();
        let solved = json(&maxcut(&["solve", "--json", path]));
        let brute = json(&maxcut(&["oracle", "--json", path]));
        assert_eq!(solved["value"], brute["value"], "{file}");
    }
}

#[test]
fn parallel_and_strategies_give_identical_reports() {
    for file in FIXTURES {
        let path = fixture(file);
        let path = path.to_str().unwrap();
        let serial = json(&maxcut(&["solve", "--json", path]));
        let parallel = json(&maxcut(&["solve", "--json", "--parallel", "4", path]));
        assert_eq!(serial["value"], parallel["value"], "{file}");
        assert_eq!(serial["witness"], parallel["witness"], "{file}");
        let highest = json(&maxcut(&["solve", "--json", "--strategy", "highest", path]));
        assert_eq!(serial["value"], highest["value"], "{file}");
    }
    let k6 = fixture("k6.txt");
    let report = json(&maxcut(&["solve", "--json", "--strategy", "priority:2,0", k6.to_str().unwrap()]));
    assert_eq!(report["value"], "9");
    let bad = maxcut(&["solve", "--strategy", "random", k6.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(maxcut(&["--help"]).status.success());
}

#[test]
fn human_report() {
    let out = maxcut(&["solve", fixture("k5.txt").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("value: 6\n"));
    assert!(text.contains("\nbase cases: 2\n"));
    assert!(text.contains("\nS: 0 "));
}

#[test]
fn validate_lists_removed_touches() {
    let out = maxcut(&["validate", fixture("touch.txt").to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("touches removed: 0\n"));
    let report = json(&maxcut(&["validate", "--json", fixture("touch.txt").to_str().unwrap()]));
    assert_eq!(report["touches_removed"], serde_json::json!([0]));
    assert_eq!(report["remaining"], 0);
    assert_eq!(report["good"], true);
    let clean = json(&maxcut(&["validate", "--json", fixture("k6.txt").to_str().unwrap()]));
    assert_eq!(clean["touches_removed"], serde_json::json!([]));
    assert_eq!(clean["remaining"], 3);
}

#[test]
fn parse_errors_exit_with_code_2() {
    let out = with_file("nodes 3\nedge 0 0 1 1\ncrossing 0 0 7\n", &["solve"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = with_file("nodes 2\nedge 0 0 1 abc\n", &["validate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infeasible_configuration_exits_with_code_3() {
    let mut text = String::from("nodes 6\n");
    let mut id = 0;
    for a in 0..3 {
        for b in 3..6 {
            text.push_str(&format!("edge {id} {a} {b} 1\n"));
            id += 1;
        }
    }
    assert_eq!(with_file(&text, &["solve"]).status.code(), Some(3));
    let out = with_file(&text, &["validate"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("feasible: no"));
}

#[test]
fn non_good_configuration_exits_with_code_4() {
    let text = "nodes 3\nedge 0 0 1 1\nedge 1 0 2 1\ncrossing 4 0 1\n";
    assert_eq!(with_file(text, &["solve"]).status.code(), Some(4));
    let out = with_file(text, &["validate"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("good: no (crossing 4)"));
}

#[test]
fn oracle_size_cap_exits_with_code_5() {
    let out = with_file("nodes 25\nedge 0 0 1 1\n", &["oracle"]);
    assert_eq!(out.status.code(), Some(5));
    let solved = json(&with_file("nodes 25\nedge 0 0 1 1\n", &["solve", "--json"]));
    assert_eq!(solved["value"], "1");
}

#[test]
fn mcr_solve_uses_the_realization() {
    let report = json(&maxcut(&["mcr-solve", "--json", fixture("k5_realized.txt").to_str().unwrap()]));
    assert_eq!(report["value"], "6");
    assert_eq!(report["witness"].as_array().unwrap().len(), 5);
    let out = maxcut(&["mcr-solve", fixture("k5.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_csv() {
    let out = maxcut(&["bench", "--from", "0", "--to", "3", "--side", "3", "--repeats", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,nodes,branches,base_cases,wall_ms");
    assert_eq!(lines.len(), 5);
    for (k, line) in lines[1..].iter().enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0], k.to_string());
        assert_eq!(cols[3], (1usize << k).to_string());
    }
    let too_many = maxcut(&["bench", "--from", "1", "--to", "10", "--side", "2"]);
    assert_eq!(too_many.status.code(), Some(1));
}
