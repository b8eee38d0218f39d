use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derangement")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_json() {
    let o = run(&["analyze", "S4-natural", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["order"], 24);
    assert_eq!(v["derangements"], 9);
    assert_eq!(v["omega"]["value"], 4);
    assert_eq!(v["alpha"]["value"], 6);
    assert_eq!(v["series"]["length"], 1);
    assert_eq!(v["quasiprimitive"], true);
}

#[test]
fn short_names_and_deterministic_output() {
    let a = run(&["analyze", "D5", "--format", "csv"]);
    let b = run(&["analyze", "D5-natural", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut rdr = csv::Reader::from_reader(a.stdout.as_slice());
    let row = rdr.records().next().unwrap().unwrap();
    assert_eq!(&row[0], "D5-natural");
    assert_eq!(&row[2], "10");
}

#[test]
fn unknown_group_is_an_error() {
    let o = run(&["analyze", "S99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("S99"));
}

#[test]
fn order_cap_is_reported() {
    let o = run(&["analyze", "S7-natural", "--max-order", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("100"));
}

#[test]
fn verify_directory_with_one_bad_file() {
    let dir = tempfile::tempdir().unwrap();
    for n in 2..11 {
        fs::write(dir.path().join(format!("c{n}.grp")), format!("degree {n}\ngen ({})\n", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "))).unwrap();
    }
    fs::write(dir.path().join("broken.grp"), "degree 3\ngen (1 4)\n").unwrap();
    let o = run(&["verify", "--dir", dir.path().to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verified"], 9);
    assert_eq!(v["failures"], 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.grp"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_skips_intransitive_groups() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("split.grp"), "degree 4\ngen (1 2)\ngen (3 4)\n").unwrap();
    fs::write(dir.path().join("c4.grp"), "degree 4\ngen (1 2 3 4)\n").unwrap();
    let o = run(&["verify", "--dir", dir.path().to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verified"], 1);
    assert_eq!(v["skipped"], 1);
}

#[test]
fn empty_directory_verifies_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("nothing verified"));
}

#[test]
fn kronecker_rows() {
    let o = run(&["kronecker", "S3-natural", "--full", "--format", "json"]);
    assert!(o.status.success());
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 21);
    assert!(rows.iter().all(|r| r["schema"] == 1 && r.get("idU").is_some() && r.get("omega_cosetU").is_some()));
}

#[test]
fn clique_writes_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.dimacs");
    let o = run(&["clique", "S4-natural", "--dimacs", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("p edge 24 108"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 108);
}

#[test]
fn series_output() {
    let o = run(&["series", "C8-regular", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["length"], 3);
    assert_eq!(v["interior_length"], 2);
}

#[test]
fn avoidance_suite_both_names() {
    for cmd in ["avoidance-test", "lemma26-test"] {
        let o = run(&[cmd, "--count", "50", "--seed", "7", "--format", "json"]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(v["passed"], 50);
        assert_eq!(v["failed"], 0);
    }
}

#[test]
fn inexact_results_fail_unless_allowed() {
    let args = ["clique", "A6-natural", "--node-budget", "1"];
    let o = run(&args);
    assert!(stdout(&o).contains("false"));
    assert_eq!(o.status.code(), Some(1));
    let mut allowed = args.to_vec();
    allowed.push("--allow-inexact");
    assert!(run(&allowed).status.success());
}
