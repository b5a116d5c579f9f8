//! End-to-end tests of the `quadfib` binary: exit-code contract, JSON
//! schema stability (golden file), and determinism.

use std::process::{Command, Output};

fn quadfib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadfib"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn search_json_matches_golden_file() {
    let out = quadfib(&["search", "--max-n1", "16", "--format", "json"]);
    // the two table errata are reported via exit code 2
    assert_eq!(out.status.code(), Some(2));
    let golden = include_str!("golden/search_n16.json");
    assert_eq!(stdout(&out), golden);
}

#[test]
fn search_json_schema_is_stable() {
    let out = quadfib(&["search", "--max-n1", "16", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let sols = v["solutions"].as_array().expect("solutions array");
    assert_eq!(sols.len(), 36);
    for s in sols {
        let n = s["n"].as_array().expect("n is an array");
        assert_eq!(n.len(), 4);
        assert!(s["a"].is_u64());
        // values are decimal strings so consumers never lose precision
        let val = s["value"].as_str().expect("value is a string");
        assert!(val.bytes().all(|b| b.is_ascii_digit()));
    }
    assert_eq!(v["confirmed"], 34);
    assert_eq!(v["errata"].as_array().map(Vec::len), Some(2));
}

#[test]
fn search_below_minimum_is_a_usage_error() {
    let out = quadfib(&["search", "--max-n1", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("max-n1"), "stderr: {err}");
}

#[test]
fn search_output_is_deterministic() {
    let a = quadfib(&["search", "--max-n1", "30", "--format", "json"]);
    let b = quadfib(&["search", "--max-n1", "30", "--format", "json"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn search_csv_has_header_and_sorted_rows() {
    let out = quadfib(&["search", "--max-n1", "16", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n1,n2,n3,n4,a,value"));
    let rows: Vec<Vec<u64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 36);
    let mut sorted = rows.clone();
    sorted.sort();
    assert_eq!(rows, sorted);
}

#[test]
fn verify_table_reports_exactly_the_errata() {
    let out = quadfib(&["verify-table", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["table_entries"], 34);
    assert_eq!(v["confirmed_by_enumeration"], 34);
    let errata = v["errata"].as_array().unwrap();
    assert_eq!(errata.len(), 2);
    assert_eq!(errata[0]["n"], serde_json::json!([2, 2, 2, 2]));
    assert_eq!(errata[1]["n"], serde_json::json!([3, 3, 3, 3]));
}

#[test]
fn cf_certifies_the_fixture_convergents() {
    let out = quadfib(&["cf", "--terms", "115", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["fixtures_match"], true);
    assert_eq!(v["max_partial_quotient"], "134");
    assert_eq!(v["quotients"].as_array().map(Vec::len), Some(115));
}

#[test]
fn bound_prints_both_chains_and_exits_cleanly() {
    let out = quadfib(&["bound"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("certified c < 9.7e11"));
    for label in ["C1", "C2", "C3", "C4", "paper:"] {
        assert!(text.contains(label), "missing {label} in:\n{text}");
    }
    assert!(text.contains("threshold N ≈ 3.7056e57"));
}

#[test]
fn bound_constants_do_not_depend_on_starting_precision() {
    let a = quadfib(&["bound"]);
    let b = quadfib(&["--precision-start", "64", "bound"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn reduce_stage_one_certifies_295_and_flags_the_paper_delta() {
    let out = quadfib(&["reduce", "--stage", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("merged bound 295"));
    assert!(text.contains("convergent index 116"));
    assert!(text.contains("paper printed: 314"));
    assert!(text.contains("DELTA"));
}

#[test]
fn reduce_stage_two_reports_degenerate_tuples_and_fallback() {
    let out = quadfib(&["reduce", "--stage", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let stage = &v["stages"][0];
    assert_eq!(stage["stage"], 2);
    assert_eq!(stage["merged_bound"], 304);
    assert_eq!(stage["fallback_bound"], 295);
    assert_eq!(stage["degenerate"].as_array().map(Vec::len), Some(2));
    assert_eq!(v["contradiction_established"], false);
}

#[test]
fn lucas_reports_published_and_extra_solutions() {
    let out = quadfib(&["lucas", "--format", "json"]);
    // extra solutions beyond the published seven are findings: exit 2
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let sols = v["solutions"].as_array().unwrap();
    let published = sols.iter().filter(|s| s["published"] == true).count();
    assert_eq!(published, 7);
    assert_eq!(v["extras_beyond_paper"], 12);
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join(format!("quadfib-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = quadfib(&[
        "search",
        "--max-n1",
        "16",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, include_str!("golden/search_n16.json"));
    std::fs::remove_dir_all(&dir).unwrap();
}
