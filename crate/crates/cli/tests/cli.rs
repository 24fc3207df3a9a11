use std::process::{Command, Output};

use serde_json::Value;

fn balsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_balsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = balsym(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn without_runtime(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("runtime_ms");
    v
}

#[test]
fn balanced_text_and_json() {
    let o = balsym(&["balanced", "2", "7"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "balanced: true"));
    let v = json(&["balanced", "2", "7"]);
    assert_eq!(v["command"], "balanced");
    assert_eq!(
        v["results"],
        serde_json::json!({"d": 2, "n": 7, "weight": "64", "balanced": true})
    );
    assert!(v["runtime_ms"].is_u64());
    assert_eq!(v["parameters"], serde_json::json!({"d": 2, "n": 7}));
}

#[test]
fn weight_and_big_integers_as_strings() {
    assert_eq!(json(&["weight", "7", "12"])["results"]["weight"], "792");
    let v = json(&["weight", "2", "100"]);
    let w = v["results"]["weight"].as_str().unwrap();
    assert!(w.len() > 20 && w.chars().all(|c| c.is_ascii_digit()));
}

#[test]
fn bisect_reports_nontrivial_rows() {
    let v = json(&["bisect", "8", "--enumerate"]);
    let nontrivial: u64 = v["results"]["nontrivial"].as_str().unwrap().parse().unwrap();
    assert!(nontrivial > 0);
    assert_eq!(v["results"]["witnesses"].as_array().unwrap().len() as u64, nontrivial);
    let v = json(&["bisect", "7"]);
    assert_eq!(v["results"]["nontrivial"], "0");
}

#[test]
fn census_commands() {
    let v = json(&["count", "2", "2"]);
    assert_eq!(v["results"]["symmetric"], "8");
    assert_eq!(v["results"]["balanced_all"], "6");
    assert_eq!(json(&["lower-bound", "2", "3"])["results"]["lower_bound"], "4");
    let v = json(&["generate", "2", "3", "--limit", "4"]);
    assert_eq!(v["results"]["generated"], 4);
}

#[test]
fn spectral_commands() {
    let v = json(&["walsh", "3", "5"]);
    assert_eq!(v["results"]["parseval"], true);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 6);
    assert_eq!(json(&["sac", "4", "6"])["results"]["sac"], false);
    let v = json(&["lacunary", "7", "2", "3"]);
    assert_eq!(v["results"]["exact"], "36");
}

#[test]
fn scans_exit_cleanly_and_stream_csv() {
    let o = balsym(&["scan-c1", "--n-max", "8", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,n,weight,balanced,predicted"));
    assert_eq!(lines.count(), (2..=8).map(|n| n - 1).sum::<usize>());
    assert!(text.contains("\n4,7,64,true,true\n"));

    let o = balsym(&["scan-c1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("counterexamples: 0"));

    let o = balsym(&["scan-c2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = balsym(&["scan-c2", "--n-max", "130", "--format", "csv"]);
    assert!(stdout(&o).starts_with("d,n,weight,balanced,predicted,deficit\n63,124,"));
}

#[test]
fn json_is_identical_across_worker_counts() {
    for args in [&["scan-c1", "--n-max", "30"][..], &["bisect", "20", "--enumerate"][..]] {
        let mut one = vec!["--workers", "1"];
        one.extend_from_slice(args);
        let mut four = vec!["--workers", "4"];
        four.extend_from_slice(args);
        assert_eq!(without_runtime(json(&one)), without_runtime(json(&four)), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(balsym(&["--help"]).status.code(), Some(0));
    assert_eq!(balsym(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(balsym(&["weight", "x", "3"]).status.code(), Some(64));
    assert_eq!(balsym(&["weight", "5", "3"]).status.code(), Some(64));
    assert_eq!(balsym(&["count", "4", "2"]).status.code(), Some(64));
    assert_eq!(balsym(&["lower-bound", "2", "2"]).status.code(), Some(64));
    assert_eq!(balsym(&["--workers", "0", "weight", "2", "3"]).status.code(), Some(64));
    assert_eq!(balsym(&["bisect", "40"]).status.code(), Some(65));
    assert_eq!(balsym(&["scan-c1", "--n-max", "100000"]).status.code(), Some(65));
    let o = balsym(&["lower-bound", "2", "2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("hypothesis"));
}
