//! End-to-end checks of the `pr` binary: subcommand behavior, output
//! formats, and exit codes (0 ok, 1 failed check, 2 unusable request).

use std::path::PathBuf;
use std::process::{Command, Output};

fn pr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pr")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("pr-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn compute_exact_join_of_paths() {
    let out = pr(&["compute", "join(P(7),P(7))", "--method", "exact"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("= 19"), "{text}");
    assert!(text.contains("witness:"), "{text}");
}

#[test]
fn compute_formula_corona() {
    let out = pr(&["compute", "corona(K(17),E(2))"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("= 53"), "{text}");
    assert!(text.contains("formula"), "{text}");
}

#[test]
fn compute_formula_refuses_the_window() {
    let out = pr(&["compute", "join(P(10),P(6))", "--method", "formula"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).contains("window"), "{}", stderr(&out));
}

#[test]
fn compute_auto_falls_through_to_search_inside_the_window() {
    let out = pr(&["compute", "join(P(10),P(6))"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("= 23"), "{text}");
    assert!(text.contains("exact-search"), "{text}");
}

#[test]
fn compute_json_has_value_and_witness() {
    let out = pr(&["compute", "K(5)", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 7); // p_4
    assert_eq!(v["kind"], "exact");
    assert_eq!(v["witness"].as_array().unwrap().len(), 5);
}

#[test]
fn compute_csv_single_row() {
    let out = pr(&["compute", "corona(K(17),E(2))", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "graph,value,kind,provenance,certified,seconds");
    let row = lines.next().unwrap();
    assert!(row.starts_with("\"corona(K(17),E(2))\",53,exact,formula,true,"), "{row}");
}

#[test]
fn compute_reads_edge_list_files() {
    let path = temp_file("path4.txt", "4\n0 1\n1 2\n2 3\n");
    let out = pr(&["compute", path.to_str().unwrap(), "--method", "exact"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("= 4"), "{}", stdout(&out));

    let formula = pr(&["compute", path.to_str().unwrap(), "--method", "formula"]);
    assert_eq!(formula.status.code(), Some(2));
}

#[test]
fn unusable_graph_argument_exits_2() {
    let out = pr(&["compute", "nope("]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("neither a family expression"), "{}", stderr(&out));
}

#[test]
fn verify_accepts_a_valid_document() {
    let path = temp_file(
        "good.json",
        r#"{"graph":"join(P(5),P(5))","labels":[1,3,5,9,13,2,7,4,11,8],"max":13}"#,
    );
    let out = pr(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("valid"), "{}", stdout(&out));
}

#[test]
fn verify_lists_violations_and_exits_1() {
    let path = temp_file("bad.json", r#"{"graph":"K(3)","labels":[2,2,5],"max":5}"#);
    let out = pr(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("share label 2"), "{text}");
}

#[test]
fn verify_rejects_malformed_json_as_usage() {
    let path = temp_file("broken.json", "{not json");
    let out = pr(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_sandwich_the_complete_graph() {
    let out = pr(&["bounds", "K(5)"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("pr >= 7"), "{text}");
    assert!(text.contains("pr <= 7"), "{text}");
}

#[test]
fn table_corona_uses_the_frozen_csv_schema() {
    let out = pr(&["table", "corona", "--n-max", "5", "--m-max", "2", "--format", "csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "family,m,n,pr,provenance,certified,seconds");
    assert_eq!(lines.count(), 10);
}

#[test]
fn table_threshold_reports_known_cutoffs() {
    let out = pr(&["table", "threshold", "--n-max", "20", "--m-max", "2", "--format", "csv"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("1,7,true"), "{text}");
    assert!(text.contains("2,16,true"), "{text}");
}

#[test]
fn table_pathjoin_flags_rows_above_the_lower_bound() {
    let out = pr(&[
        "table", "pathjoin", "--n-min", "6", "--n-max", "6", "--m-min", "6", "--m-max", "10",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ABOVE-LOWER"), "{text}");
    assert!(text.contains("23"), "{text}");
}

#[test]
fn mod11_check_passes() {
    let out = pr(&["mod11", "--x-max", "500"]);
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn random_json_reports_are_byte_identical() {
    let args = ["random", "--n", "8", "--trials", "3", "--seed", "99", "--format", "json"];
    let a = pr(&args);
    let b = pr(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["rows"][0]["seed"], 99);
}
