use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn plumbline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plumbline")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn certify_then_verify_in_fresh_processes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("knots.csv");
    fs::write(&csv, "name,u,c4,g4\nheadline,21,,\n5_1,2,,\n").unwrap();
    let out = dir.path().join("certs");
    let o = plumbline(&["certify", "--knots", path(&csv), "--manifold", "K3", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("headline\tslice"));
    let mut files: Vec<_> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 2);
    for f in &files {
        let v = plumbline(&["verify-certificate", path(f)]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
        assert!(stdout(&v).contains("certificate OK"));
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("k.csv");
    fs::write(&csv, "name,u,c4,g4\nbig,,30,\n").unwrap();
    let out = dir.path().join("o");
    let declined = plumbline(&["certify", "--knots", path(&csv), "--manifold", "K3", "--out", path(&out)]);
    assert_eq!(declined.status.code(), Some(1));

    let e5 = plumbline(&["certify", "--knots", path(&csv), "--manifold", "E:5", "--out", path(&out)]);
    assert_eq!(e5.status.code(), Some(0));

    let bad_manifold = plumbline(&["certify", "--knots", path(&csv), "--manifold", "E:1", "--out", path(&out)]);
    assert_eq!(bad_manifold.status.code(), Some(2));

    fs::write(&csv, "name,u,c4,g4\nneg,-1,,\n").unwrap();
    let rejected = plumbline(&["certify", "--knots", path(&csv), "--manifold", "K3", "--out", path(&out)]);
    assert_eq!(rejected.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&rejected.stderr).contains("negative"));

    let missing = plumbline(&["verify-certificate", path(&dir.path().join("nope.json"))]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn tampered_certificate_fails_with_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("k.csv");
    fs::write(&csv, "name,u,c4,g4\nk,0,,\n").unwrap();
    let out = dir.path().join("o");
    plumbline(&["certify", "--knots", path(&csv), "--manifold", "zero-sphere:1", "--out", path(&out)]);
    let f = out.join("0000_k.json");
    let json = fs::read_to_string(&f).unwrap();
    assert!(json.contains("\"genus_bound\""));
    fs::write(&f, json.replace("\"genus\": 1", "\"genus\": 0")).unwrap();
    let v = plumbline(&["verify-certificate", path(&f)]);
    assert_eq!(v.status.code(), Some(3));
    assert!(stdout(&v).contains("FAIL"));
}

#[test]
fn hopf_invariants_match_the_four_state_sum() {
    let dir = tempfile::tempdir().unwrap();
    let pd = dir.path().join("hopf.pd");
    fs::write(&pd, "X(1,4,2,3)\nX(3,2,4,1)\n").unwrap();
    let o = plumbline(&["invariants", "--pd", path(&pd), "--bracket"]);
    assert_eq!(o.status.code(), Some(0));
    // A-smoothings at both crossings: 2 loops, A^2 d; BB: 2 loops, A^-2 d;
    // AB and BA: 1 loop each. Sum: -A^4 - A^-4.
    assert_eq!(stdout(&o).trim(), "bracket: -1*A^(-4) + -1*A^(4)");

    fs::write(&pd, "X+(1,5,2,4)\nX+(3,1,4,6)\nX+(5,3,6,2)\n").unwrap();
    let o = plumbline(&["invariants", "--pd", path(&pd), "--jones"]);
    assert_eq!(stdout(&o).trim(), "jones: 1*t^(2/2) + 1*t^(6/2) + -1*t^(8/2)");

    fs::write(&pd, "X(1,4,2,3)\nX(3,2,4,1)\n").unwrap();
    let unoriented = plumbline(&["invariants", "--pd", path(&pd), "--jones"]);
    assert_eq!(unoriented.status.code(), Some(2));
}

#[test]
fn crossing_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let pd = dir.path().join("t.pd");
    fs::write(&pd, "X+(1,5,2,4)\nX+(3,1,4,6)\nX+(5,3,6,2)\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_plumbline"))
        .args(["invariants", "--pd", path(&pd), "--bracket"])
        .env("PLUMBLINE_CROSSING_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tree_commands() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("t.txt");
    fs::write(&tree, "1 2 0\n2 3 1\n").unwrap();
    let svg = dir.path().join("a.svg");
    let o = plumbline(&["assoc-link", "--tree", path(&tree), "--svg", path(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("X(")).count(), 6);
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let b = plumbline(&["bicolour", "--tree", path(&tree)]);
    let colours: Vec<String> = stdout(&b).lines().map(|l| l.split(' ').nth(2).unwrap().to_string()).collect();
    assert_eq!(colours.len(), 2);
    assert_ne!(colours[0], colours[1]);

    let p = dir.path().join("p.txt");
    fs::write(&p, "vertex 0 0\nvertex 1 0\nvertex 2 0\nedge 0 1\nedge 1 2\n").unwrap();
    let e = plumbline(&["embed", "--plumbing", path(&p)]);
    assert_eq!(e.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&e.stdout).unwrap();
    assert_eq!(v["embedding"]["vertex_map"], serde_json::json!([0, 1]));

    fs::write(&tree, "1 2\n2 1\n").unwrap();
    assert_eq!(plumbline(&["bicolour", "--tree", path(&tree)]).status.code(), Some(2));
}

#[test]
fn bench_rejects_unknown_suite() {
    assert_eq!(plumbline(&["bench", "--suite", "nope"]).status.code(), Some(2));
}
