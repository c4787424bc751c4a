use std::process::{Command, Output};

fn kads(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kads")).args(args).output().expect("run kads")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn json_report_is_reproducible_without_timing() {
    let args = ["run", "--suite", "jacobi", "--suite", "bialgebra", "--no-timing"];
    let a = kads(&args);
    let b = kads(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.len() > 40);
    assert!(reports.iter().all(|r| r["status"] == "pass" && r["ms"].is_null()));
    assert_eq!(v["config"]["order"], 4);
    let ids: Vec<(&str, &str)> =
        reports.iter().map(|r| (r["suite"].as_str().unwrap(), r["id"].as_str().unwrap())).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn timing_is_reported_by_default() {
    let o = kads(&["run", "--suite", "dd"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["reports"][0]["ms"].as_f64().is_some());
}

#[test]
fn text_and_markdown_formats() {
    let o = kads(&["run", "--suite", "rmatrix", "--format", "text"]);
    assert!(stdout(&o).lines().last().unwrap().ends_with("0 failed"));
    let o = kads(&["run", "--suite", "rmatrix", "--format", "md"]);
    assert!(stdout(&o).starts_with("| suite | id |"));
}

#[test]
fn failing_checks_exit_with_one() {
    let o = kads(&["run", "--suite", "geom", "--regime", "ads", "--tol", "fields=1e-300", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        vec!["run", "--suite", "nope"],
        vec!["run", "--regime", "minkowski", "--eta", "0.5"],
        vec!["run", "--order", "0"],
        vec!["run", "--tol", "bogus=1"],
        vec!["run", "--tol", "pl=-1"],
        vec!["expand", "no.such.formula"],
    ] {
        let o = kads(&args);
        assert_eq!(o.status.code(), Some(2), "{:?}", args);
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn expand_prints_canonical_forms() {
    let o = kads(&["expand", "dual.x0x1"]);
    assert_eq!(stdout(&o).trim(), "-z*x1 - theta*x2");
    let o = kads(&["expand", "qword:d a"]);
    assert_eq!(stdout(&o).trim(), "a*d + (q - q^-1)*b*c");
    let o = kads(&["expand", "coproduct.untwisted.bicross.P0", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("P0@1"));
}

#[test]
fn report_can_be_written_to_a_file() {
    let path = std::env::temp_dir().join(format!("kads-report-{}.json", std::process::id()));
    let o = kads(&["run", "--suite", "jacobi", "--no-timing", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["reports"][0]["suite"], "jacobi");
    std::fs::remove_file(path).ok();
}

#[test]
fn tables_in_json_and_csv() {
    let o = kads(&["table", "pl-brackets", "--count", "1", "--regime", "ads"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["rows"].as_array().unwrap().len(), 15);
    let o = kads(&["table", "vector-fields", "--count", "2", "--regime", "minkowski", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("eta_re,eta_im,"));
    assert!(text.lines().count() > 2);
}
