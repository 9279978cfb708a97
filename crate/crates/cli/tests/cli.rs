use std::process::{Command, Output};

use serde_json::Value;

fn dh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dh"))
        .args(args)
        .env_remove("DH_CACHE")
        .output()
        .expect("spawn dh")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = dh(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn basis_sizes() {
    for (n, d, len) in [("1", "2", 4), ("0", "3", 1), ("2", "1", 3), ("2", "2", 9)] {
        let v = json(&["basis", "--n", n, "--d", d]);
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["basis"].as_array().unwrap().len(), len, "N={n} d={d}");
    }
}

#[test]
fn basis_rejects_degree_zero() {
    assert_eq!(dh(&["basis", "--n", "1", "--d", "0"]).status.code(), Some(2));
}

#[test]
fn check_verdicts() {
    let yes = dh(&["check", "x0*x1[1] - x1*x0[1]"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes), "yes, degree 2\n");

    let no = dh(&["check", "x0[1]"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no), "no\n");

    let bad = dh(&["check", "x0 + * x1"]);
    assert_eq!(bad.status.code(), Some(2));
    let err = String::from_utf8(bad.stderr).unwrap();
    assert!(err.contains('^'), "{err}");
}

#[test]
fn check_reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    std::fs::write(&path, "x0^2*x1[1] - x0*x1*x0[1]\n").unwrap();
    let v = json(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(v["homogeneous"], true);
    assert_eq!(v["degree"], 3);
}

fn census_rows(args: &[&str]) -> Vec<(u64, u64, u64)> {
    let v = json(args);
    v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["k"].as_u64().unwrap(), e["n"].as_u64().unwrap(), e["count"].as_u64().unwrap()))
        .collect()
}

#[test]
fn census_projective_line() {
    assert_eq!(census_rows(&["census", "--n", "1", "--d", "2", "--k", "1"]), vec![(1, 0, 3), (1, 1, 1)]);
    // beyond k = d-1 nothing changes but the reported order
    assert_eq!(census_rows(&["census", "--n", "1", "--d", "2", "--k", "5"]), vec![(5, 0, 3), (5, 1, 1)]);
}

#[test]
fn census_plane_total() {
    let total: u64 = census_rows(&["census", "--n", "2", "--d", "2", "--k", "1"]).iter().map(|r| r.2).sum();
    assert_eq!(total, 9);
}

#[test]
fn census_csv_header() {
    let out = dh(&["--format", "csv", "census", "--n", "1", "--d", "3", "--all-k"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,d,k,n,count"));
    let ks: Vec<&str> = lines.map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(ks.first(), Some(&"0"));
    assert_eq!(ks.last(), Some(&"2"));
}

#[test]
fn kernel_dims() {
    let v = json(&["verify", "--suite", "kernel", "--max-d", "3"]);
    let full: Vec<u64> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["id"] == "kernel.full")
        .map(|c| c["computed"].as_u64().unwrap())
        .collect();
    assert_eq!(full, vec![1, 2, 6]);
    assert_eq!(v["failed"], 0);

    let k = json(&["kernel", "--d", "4"]);
    assert_eq!(k["full"], 24);
}

#[test]
fn tableaux_listing() {
    let v = json(&["tableaux", "--shape", "2,1", "--k", "1"]);
    assert_eq!(v["tableaux"].as_array().unwrap().len(), 2);
    let p = json(&["tableaux", "--d", "4", "--k", "2"]);
    let standard: u64 = p["partitions"].as_array().unwrap().iter().map(|r| r["standard"].as_u64().unwrap().pow(2)).sum();
    assert_eq!(standard, 24);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(dh(&["verify", "--suite", "rsk"]).status.code(), Some(0));
    assert_eq!(dh(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(dh(&["census", "--n", "1", "--d", "2"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "basis", "--n", "2", "--d", "3"][..],
        &["--format", "csv", "verify", "--suite", "hwv", "--max-d", "3"][..],
        &["census", "--n", "2", "--d", "3", "--all-k"][..],
    ] {
        let a = dh(args);
        let b = dh(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn cached_runs_match() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache", cache, "--format", "json", "basis", "--n", "1", "--d", "3"];
    let first = dh(&args);
    let second = dh(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, dh(&args[2..]).stdout);
    let refs = std::fs::read_dir(dir.path()).unwrap().filter_map(|e| e.ok()).filter(|e| e.path().extension().is_some_and(|x| x == "ref")).count();
    assert_eq!(refs, 1);
}
