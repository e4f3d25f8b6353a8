use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const ROW_2_1: &str = r#"{"n":2,"w":2,"gamma":"zeta(2,1)","alpha":"zeta(2,1)","beta":"zeta(2,1)","r":1,"i":0}"#;
const GRID: &str = r#"{"n":[2,3],"w":[1],"gamma":"primitive","beta":["gamma^j"],"alpha":"solve","i":"all","r":{"from":0,"to":3}}"#;

fn ydkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ydkit")).args(args).output().expect("binary runs")
}

fn ydkit_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ydkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_single_tuple() {
    let o = ydkit(&["classify", "--json", ROW_2_1]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json_out(&o);
    assert_eq!(v["regime"], "T1");
    assert_eq!(v["finite"], true);
    let ids: Vec<&str> = v["matches"].as_array().unwrap().iter().flat_map(|m| m["ids"].as_array().unwrap()).map(|x| x.as_str().unwrap()).collect();
    assert!(ids.contains(&"(2,1)"), "{ids:?}");
}

#[test]
fn infinite_when_no_row_fires() {
    let o = ydkit(&["classify", "--json", r#"{"n":2,"w":2,"gamma":"-1","alpha":"1","beta":"-1","r":0,"i":0}"#]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["finite"], false);
    assert_eq!(v["matches"].as_array().unwrap().len(), 0);
}

#[test]
fn construct_and_verify_round_trip() {
    let params = br#"{"n":3,"w":1,"gamma":"zeta(3,1)","alpha":"t^3","beta":"t","r":1,"i":2}"#;
    let c = ydkit_stdin(&["construct"], params);
    assert_eq!(c.status.code(), Some(0), "{}", stderr(&c));
    let built = json_out(&c);
    assert_eq!(built["verification"]["verified"], true);
    assert_eq!(built["module"]["dim"], 3);
    let v = ydkit_stdin(&["verify"], &c.stdout);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    assert_eq!(json_out(&v), built["verification"]);
}

#[test]
fn bad_input_exits_2() {
    let o = ydkit(&["construct", "--json", r#"{"n":2,"w":1,"gamma":"-1","alpha":"-1","beta":"1","r":0,"i":0}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("alpha^w = beta^n"), "{}", stderr(&o));
    let o = ydkit(&["construct", "--json", r#"{"n":2,"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("malformed JSON"));
    let o = ydkit(&["construct", "--json", r#"{"n":2,"w":1,"gamma":"zeta(4,1)","alpha":"1","beta":"1","r":0,"i":0}"#]);
    assert_eq!(o.status.code(), Some(2), "γ of order 4 is not a primitive square root");
}

#[test]
fn undersized_conductor_names_the_order() {
    let o = ydkit(&["--conductor", "6", "classify", "--json", r#"{"n":3,"w":1,"gamma":"zeta(3,1)","alpha":"1","beta":"zeta(4,1)","r":0,"i":0}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("order 4"), "{}", stderr(&o));
}

#[test]
fn grid_count_and_determinism() {
    let a = ydkit(&["classify", "--grid", GRID, "--jobs", "1"]);
    let b = ydkit(&["classify", "--grid", GRID, "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<Value> = String::from_utf8(a.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    // n=2: 1 γ · 2 β · 2 i · 4 r; n=3: 2 γ · 3 β · 3 i · 4 r
    assert_eq!(lines.len(), 16 + 72);
    assert!(lines.iter().all(|l| l["verdict"]["regime"] == "T1"));
    assert_eq!(lines[0]["params"]["n"], 2);
}

#[test]
fn grid_skips_are_logged() {
    let grid = r#"{"n":[2],"w":[2],"beta":["t"],"alpha":"solve","r":[0]}"#;
    let o = ydkit(&["classify", "--grid", grid]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8(o.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4);
    let grid = r#"{"n":[3],"w":[2],"beta":["t","gamma^j"],"alpha":["1"],"r":[0]}"#;
    let o = ydkit(&["classify", "--grid", grid, "--format", "tsv"]);
    let out = String::from_utf8(o.stdout.clone()).unwrap();
    assert_eq!(out.lines().count(), 1 + 2 * 4 * 3);
    assert!(stderr(&o).contains("skip"), "{}", stderr(&o));
    assert!(out.contains("skipped: alpha^w = beta^n fails"));
}

#[test]
fn transcendental_grid_carries_certificates() {
    let grid = r#"{"n":[2,3],"w":[1],"beta":["t"],"alpha":"solve","i":[0],"r":[1]}"#;
    let o = ydkit(&["classify", "--grid", grid]);
    let lines: Vec<Value> = String::from_utf8(o.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    for l in &lines {
        assert_eq!(l["verdict"]["regime"], "T2");
        assert_eq!(l["verdict"]["finite"], false);
        assert!(l["verdict"]["certificate"].is_string());
    }
}

#[test]
fn tables_list_is_tsv() {
    let o = ydkit(&["tables", "list"]);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("table\tids\tzeta"));
    assert_eq!(out.lines().count(), 67);
    assert!(out.lines().all(|l| l.split('\t').count() == 7));
    let o = ydkit(&["tables", "list", "--format", "json"]);
    assert_eq!(json_out(&o).as_array().unwrap().len(), 66);
}

#[test]
fn corrupted_corpus_exits_4() {
    let rows = include_str!("../../ydkit/data/classification_rows.tsv").replacen("n >= 2", "n >= 3", 1);
    let path = std::env::temp_dir().join(format!("ydkit-rows-{}.tsv", std::process::id()));
    std::fs::write(&path, rows).unwrap();
    let o = ydkit(&["--tables", path.to_str().unwrap(), "selftest", "--criteria", "6"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("integrity"), "{}", stderr(&o));
}

#[test]
fn selftest_with_small_degree() {
    let o = ydkit(&["selftest", "--degree", "2", "--criteria", "6,7"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(out.lines().filter(|l| l.contains("PASS")).count(), 2);
    assert!(out.contains("untested beyond 2"));
    let o = ydkit(&["selftest", "--criteria", "42"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hilbert_and_cross_validation() {
    let o = ydkit(&["hilbert", "--degree", "4", "--diagonal", r#"[["-1","zeta(3,1)"],["zeta(3,2)","-1"]]"#]);
    assert_eq!(json_out(&o)["dims"], serde_json::json!([1, 2, 1, 0, 0]));
    let o = ydkit(&["hilbert", "--degree", "3", "--json", ROW_2_1]);
    assert_eq!(json_out(&o)["dims"], serde_json::json!([1, 2, 1, 0]));
    let o = ydkit(&["cross-validate", "--degree", "3", "--json", ROW_2_1]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_out(&o);
    assert_eq!(r["consistent"], true);
    assert_eq!(r["companion"]["dims"], serde_json::json!([1, 2, 2, 2]));
}

#[test]
fn comatrix_command() {
    let o = ydkit(&["comatrix", "--size", "2", "--json", r#"{"n":3,"w":1,"gamma":"zeta(3,1)","alpha":"t^3","beta":"t","r":0,"i":1}"#]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["is_comatrix"], true);
    assert_eq!(v["rendered"].as_array().unwrap().len(), 3);
}
