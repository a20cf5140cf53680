use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TRIANGLE: &str = r#"{"d":3,"kind":"graphic","params":{"vertices":3,"edges":[[1,2],[2,3],[1,3]]}}"#;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matroid-shift")).args(args).output().unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ok_report(out: &Output) -> Value {
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn fails_with(out: &Output, code: i32, needle: &str) {
    assert_eq!(out.status.code(), Some(code), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty(), "stdout must stay empty on errors");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(needle), "{err:?} lacks {needle:?}");
}

fn columns(r: &Value) -> Vec<Vec<u64>> {
    serde_json::from_value(r["columns"].clone()).unwrap()
}

#[test]
fn lexmin_triangle() {
    let ws = Workspace::new();
    let g = ws.file("tri.txt", "p 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let r = ok_report(&run(&["lexmin-trees", arg(&g), "--n", "2", "--recheck"]));
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "lexmin-trees");
    assert_eq!(r["vulnerability"], serde_json::json!([3, 1]));
    assert_eq!(r["verification"], "skipped");
    let cols = columns(&r);
    assert_eq!(cols.len(), 2);
    assert!(cols.iter().all(|c| c.len() == 2));
    let shared = cols[0].iter().filter(|e| cols[1].contains(e)).count();
    assert_eq!(shared, 1);
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn lexmin_k4_verified() {
    let ws = Workspace::new();
    let g = ws.file("k4.txt", "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    let r = ok_report(&run(&["lexmin-trees", arg(&g), "--n", "2", "--verify"]));
    assert_eq!(r["vulnerability"], serde_json::json!([6, 0]));
    assert_eq!(r["verification"], "ok");
}

#[test]
fn lexmin_single_edge() {
    let ws = Workspace::new();
    let g = ws.file("e.txt", "p 2 1\ne 1 2\n");
    let r = ok_report(&run(&["lexmin-trees", arg(&g), "--n", "5", "--verify", "--recheck"]));
    assert_eq!(r["vulnerability"], serde_json::json!([1, 1, 1, 1, 1]));
    assert_eq!(columns(&r), vec![vec![1]; 5]);
}

#[test]
fn lexmin_errors() {
    let ws = Workspace::new();
    let dis = ws.file("dis.txt", "p 4 2\ne 1 2\ne 3 4\n");
    fails_with(&run(&["lexmin-trees", arg(&dis), "--n", "2"]), 2, "graph not connected");
    let bad = ws.file("bad.txt", "p 3 1\ne 1 9\n");
    fails_with(&run(&["lexmin-trees", arg(&bad), "--n", "2"]), 3, "out of range");
    let missing = ws.dir.path().join("nope.txt");
    fails_with(&run(&["lexmin-trees", arg(&missing), "--n", "2"]), 3, "cannot read");
}

#[test]
fn lexmin_verify_skips_past_the_guard() {
    let ws = Workspace::new();
    let g = ws.file("k4.txt", "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    let out = Command::new(env!("CARGO_BIN_EXE_matroid-shift"))
        .args(["lexmin-trees", arg(&g), "--n", "2", "--verify"])
        .env("MATROID_SHIFT_GUARD", "3")
        .output()
        .unwrap();
    let r = ok_report(&out);
    assert_eq!(r["verification"], "skipped");
}

#[test]
fn shifted_triangle_bases() {
    let ws = Workspace::new();
    let m = ws.file("tri.json", TRIANGLE);
    let c = ws.file("c.json", r#"{"d":3,"n":2,"rows":[[3,0],[3,0],[0,0]]}"#);
    let r = ok_report(&run(&["shifted", arg(&m), arg(&c), "--n", "2", "--bases", "--verify", "--recheck", "--seed", "7"]));
    assert_eq!(r["value"], 6);
    assert_eq!(r["verification"], "ok");
    assert!(columns(&r).iter().all(|c| c.len() == 2));
}

#[test]
fn shifted_zero_profits() {
    let ws = Workspace::new();
    let m = ws.file("u.json", r#"{"d":3,"kind":"uniform","params":{"rank":1}}"#);
    let c = ws.file("c.json", r#"{"d":3,"n":2,"rows":[[0,0],[0,0],[0,0]]}"#);
    let r = ok_report(&run(&["shifted", arg(&m), arg(&c), "--n", "2", "--verify"]));
    assert_eq!(r["value"], 0);
}

#[test]
fn shifted_errors() {
    let ws = Workspace::new();
    let m = ws.file("tri.json", TRIANGLE);
    let short = ws.file("c.json", r#"{"d":2,"n":2,"rows":[[1,1],[1,1]]}"#);
    fails_with(&run(&["shifted", arg(&m), arg(&short), "--n", "2"]), 3, "expected a 3x2 matrix");
    let ragged = ws.file("r.json", r#"{"d":3,"n":2,"rows":[[1,1],[1],[1,1]]}"#);
    fails_with(&run(&["shifted", arg(&m), arg(&ragged), "--n", "2"]), 3, "rows do not form");
    let huge = ws.file("h.json", r#"{"d":3,"n":1,"rows":[[2000000000000000000],[2000000000000000000],[0]]}"#);
    fails_with(&run(&["shifted", arg(&m), arg(&huge), "--n", "1"]), 5, "overflow");
    let broken = ws.file("b.json", r#"{"d":3,"kind":"graphic""#);
    let c = ws.file("c3.json", r#"{"d":3,"n":1,"rows":[[1],[1],[1]]}"#);
    fails_with(&run(&["shifted", arg(&broken), arg(&c), "--n", "1"]), 3, "invalid matroid description");
    fails_with(&run(&["shifted", arg(&m), arg(&c), "--n", "0"]), 3, "--n");
}

#[test]
fn intersect_path_as_two_partitions() {
    let ws = Workspace::new();
    // e1 = ab, e2 = bc; one matroid per side of the bipartition {a, c} | {b}
    let m1 = ws.file("m1.json", r#"{"d":2,"kind":"partition","params":{"blocks":[1,2],"capacities":[1,1]}}"#);
    let m2 = ws.file("m2.json", r#"{"d":2,"kind":"partition","params":{"blocks":[1,1],"capacities":[1]}}"#);
    let c = ws.file("c.json", r#"{"d":2,"n":2,"rows":[[1,1],[1,1]]}"#);
    let r = ok_report(&run(&["intersect-value", arg(&m1), arg(&m2), arg(&c), "--n", "2", "--verify", "--recheck"]));
    assert_eq!(r["value"], 2);
    assert_eq!(r["verification"], "ok");
    assert!(r.get("columns").is_none());
}

#[test]
fn intersect_with_itself_matches_shifted() {
    let ws = Workspace::new();
    let m = ws.file("u.json", r#"{"d":3,"kind":"uniform","params":{"rank":2}}"#);
    let c = ws.file("c.json", r#"{"d":3,"n":2,"rows":[[4,-1],[2,2],[-3,5]]}"#);
    let a = ok_report(&run(&["intersect-value", arg(&m), arg(&m), arg(&c), "--n", "2"]));
    let b = ok_report(&run(&["shifted", arg(&m), arg(&c), "--n", "2"]));
    assert_eq!(a["value"], b["value"]);
}

#[test]
fn intersect_bipartite_emits_a_solution() {
    let ws = Workspace::new();
    let g = ws.file("k22.json", r#"{"left":2,"right":2,"edges":[[1,1],[1,2],[2,1],[2,2]]}"#);
    let c = ws.file("c.json", r#"{"d":4,"n":2,"rows":[[1,1],[1,1],[1,1],[1,1]]}"#);
    let r = ok_report(&run(&["intersect-value", arg(&c), "--bipartite", arg(&g), "--n", "2", "--verify", "--recheck"]));
    assert_eq!(r["value"], 4);
    assert_eq!(r["verification"], "ok");
    assert_eq!(columns(&r).len(), 2);
}

#[test]
fn intersect_errors() {
    let ws = Workspace::new();
    let g = ws.file("tri.json", TRIANGLE);
    let u = ws.file("u.json", r#"{"d":3,"kind":"uniform","params":{"rank":2}}"#);
    let c = ws.file("c.json", r#"{"d":3,"n":2,"rows":[[1,1],[1,1],[1,1]]}"#);
    fails_with(&run(&["intersect-value", arg(&g), arg(&u), arg(&c), "--n", "2"]), 6, "strongly base orderable");
    fails_with(&run(&["intersect-value", arg(&u), arg(&c), "--n", "2"]), 3, "M1 M2 PROFITS");
}

#[test]
fn fiber_uniform_forced() {
    let ws = Workspace::new();
    let m = ws.file("u.json", r#"{"d":2,"kind":"uniform","params":{"rank":1}}"#);
    let x = ws.file("x.json", r#"{"d":2,"n":2,"rows":[[1,0],[1,0]]}"#);
    let out = run(&["fiber", arg(&m), arg(&x), "--n", "2", "--recheck"]);
    let r = ok_report(&out);
    let mut cols = columns(&r);
    cols.sort();
    assert_eq!(cols, vec![vec![1], vec![2]]);
    assert_eq!(r["row_sums"]["x"], serde_json::json!([1, 1]));
    assert_eq!(r["row_sums"]["y"], serde_json::json!([1, 1]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row sums x"));
}

#[test]
fn fiber_identity_when_columns_are_independent() {
    let ws = Workspace::new();
    let m = ws.file("tri.json", TRIANGLE);
    let x = ws.file("x.json", r#"{"d":3,"n":2,"rows":[[1,0],[1,1],[0,1]]}"#);
    let r = ok_report(&run(&["fiber", arg(&m), arg(&x), "--n", "2", "--recheck"]));
    assert_eq!(r["row_sums"]["x"], r["row_sums"]["y"]);
}

#[test]
fn fiber_errors() {
    let ws = Workspace::new();
    let m = ws.file("tri.json", TRIANGLE);
    let ones = ws.file("x.json", r#"{"d":3,"n":2,"rows":[[1,1],[1,1],[1,1]]}"#);
    fails_with(&run(&["fiber", arg(&m), arg(&ones), "--n", "2"]), 7, "not in shuffle set");
    let twos = ws.file("t.json", r#"{"d":3,"n":2,"rows":[[2,0],[1,1],[0,1]]}"#);
    fails_with(&run(&["fiber", arg(&m), arg(&twos), "--n", "2"]), 3, "");
}

#[test]
fn digest_tracks_content_not_layout() {
    let ws = Workspace::new();
    let a = ws.file("a.json", TRIANGLE);
    let b = ws.file("b.json", "{ \"params\": {\"edges\": [[1,2],[2,3],[1,3]], \"vertices\": 3},\n  \"kind\": \"graphic\", \"d\": 3 }");
    let c = ws.file("c.json", r#"{"d":3,"n":1,"rows":[[1],[1],[1]]}"#);
    let c2 = ws.file("c2.json", r#"{"d":3,"n":1,"rows":[[1],[1],[2]]}"#);
    let ra = ok_report(&run(&["shifted", arg(&a), arg(&c), "--n", "1"]));
    let rb = ok_report(&run(&["shifted", arg(&b), arg(&c), "--n", "1"]));
    let rc = ok_report(&run(&["shifted", arg(&a), arg(&c2), "--n", "1"]));
    assert_eq!(ra["input_digest"], rb["input_digest"]);
    assert_ne!(ra["input_digest"], rc["input_digest"]);
}

#[test]
fn usage_errors_exit_3() {
    fails_with(&run(&["lexmin-trees"]), 3, "");
    fails_with(&run(&["frobnicate"]), 3, "");
    assert!(run(&["--help"]).status.success());
}
