use std::path::Path;
use std::process::{Command, Output};

use pbdrr_core::{compute_metrics, naive_reference_simulate, Policy};
use pbdrr_lab::{parse_workload, LabError, WorkloadFormat};
use serde_json::Value;

const CASE1: &str = "P1,5,2\nP2,12,3\nP3,16,1\nP4,21,4\nP5,23,5\n";
const CASE2: &str = "id,burst,priority\nP1,31,2\nP2,23,1\nP3,16,4\nP4,9,5\nP5,1,3\n";
const CASE3: &str = "P1,11,3\nP2,53,1\nP3,8,2\nP4,41,4\nP5,20,5\n";

fn pbdrr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbdrr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn run_pbdrr_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "case1.csv", CASE1);
    let o = pbdrr(&[
        "run", "--input", &input, "--policy", "pbdrr", "--ots", "4", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["metrics"]["avg_tat"], 46.4);
    assert_eq!(v["metrics"]["avg_wt"], 31.0);
    assert_eq!(v["metrics"]["avg_tat_exact"], "232/5");
    assert_eq!(
        v["trace"][0],
        serde_json::json!({"pid": "P1", "start": 0, "end": 5, "round": 1})
    );
    assert_eq!(v["trace"].as_array().unwrap().len(), 17);
}

#[test]
fn run_round_robin_matches_reference() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "case1.csv", CASE1);
    let o = pbdrr(&[
        "run",
        "--input",
        &input,
        "--policy",
        "rr",
        "--quantum",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();

    let w = parse_workload(CASE1, WorkloadFormat::Csv).unwrap();
    let t = naive_reference_simulate(&w, Policy::round_robin(4).unwrap()).unwrap();
    let m = compute_metrics(&t, &w).unwrap();
    assert_eq!(v["metrics"]["cs"], m.context_switches);
    assert_eq!(v["metrics"]["avg_tat_exact"], format!("{}/5", m.avg_turnaround.total()));
    assert_eq!(v["trace"], serde_json::to_value(&t.slices).unwrap());
}

#[test]
fn exit_codes() {
    let o = pbdrr(&["run", "--input", "definitely/missing.csv", "--policy", "pbdrr"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.csv", "P1,0,2\n");
    assert_eq!(
        pbdrr(&["run", "--input", &bad, "--policy", "mrr"]).status.code(),
        Some(1)
    );
    let input = write(dir.path(), "case1.csv", CASE1);
    assert_eq!(
        pbdrr(&["run", "--input", &input, "--policy", "rr"]).status.code(),
        Some(1)
    );
    assert_eq!(pbdrr(&["run", "--input", &input]).status.code(), Some(1));
    assert_eq!(
        pbdrr(&["compare", "--input", &input, "--format", "svg"]).status.code(),
        Some(1)
    );
    assert_eq!(pbdrr(&["repro", "--case", "7"]).status.code(), Some(1));

    let blocked = dir.path().join("nope").join("out.txt");
    let o = pbdrr(&["its", "--input", &input, "--out", blocked.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(LabError::Core(pbdrr_core::Error::Integrity("x".into())).exit_code(), 3);
}

#[test]
fn repro_verdicts() {
    let o = pbdrr(&["repro", "--case", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("FLAG\tPBDRR.cs\texpected=17\tcomputed=16"));
    assert!(text.contains("PASS\tPBDRR.avg_tat\texpected=46.4\tcomputed=46.4"));
    assert!(text.contains("PASS\tPBDRR.avg_wt\texpected=31\tcomputed=31"));

    let o = pbdrr(&["repro", "--case", "illustration"]);
    let text = stdout(&o);
    assert!(text.contains("PASS\tits.its\texpected=5,5,6,4,5\tcomputed=5,5,6,4,5"));
    assert!(text.contains("PASS\tPBDRR.round1\texpected=3,5,6,2,5\tcomputed=3,5,6,2,5"));

    let o = pbdrr(&["repro", "--case", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["fail"], 0);
    assert_eq!(v["flag"], 0);
    let metric_cells: Vec<_> = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["cell"].as_str().unwrap().contains("avg_") || c["cell"].as_str().unwrap().ends_with(".cs"))
        .collect();
    assert_eq!(metric_cells.len(), 6);
    assert!(metric_cells.iter().all(|c| c["verdict"] == "PASS"));

    assert_eq!(pbdrr(&["repro", "--case", "all"]).status.code(), Some(0));
}

#[test]
fn its_tables() {
    let dir = tempfile::tempdir().unwrap();
    let case2 = write(dir.path(), "case2.csv", CASE2);
    let o = pbdrr(&["its", "--input", &case2, "--ots", "4", "--format", "json"]);
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    let col = |k: &str| rows.iter().map(|r| r[k].as_i64().unwrap()).collect::<Vec<_>>();
    assert_eq!(col("pc"), vec![0, 1, 0, 0, 0]);
    assert_eq!(col("sc"), vec![0, 1, 1, 1, 1]);

    let case3 = write(dir.path(), "case3.csv", CASE3);
    let o = pbdrr(&["its", "--input", &case3, "--format", "csv"]);
    let text = stdout(&o);
    let its: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(its, vec!["4", "5", "8", "4", "5"]);

    let single = write(
        dir.path(),
        "one.json",
        r#"{"processes":[{"id":"solo","burst":9,"priority":6}]}"#,
    );
    let o = pbdrr(&["its", "--input", &single, "--format", "csv"]);
    assert_eq!(stdout(&o), "id,burst,priority,ots,pc,sc,csc,its\nsolo,9,6,4,1,0,0,5\n");
}

#[test]
fn compare_reference_and_generated() {
    let dir = tempfile::tempdir().unwrap();
    let case2 = write(dir.path(), "case2.csv", CASE2);
    let o = pbdrr(&[
        "compare",
        "--input",
        &case2,
        "--policies",
        "mrr,pbdrr",
        "--format",
        "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "algorithm,avg_tat,avg_wt,cs\nMRR,54,38,18\nPBDRR,50.4,34.4,12\n"
    );

    let generated = dir.path().join("gen.csv");
    let g = generated.to_str().unwrap();
    let o = pbdrr(&[
        "gen", "--n", "7", "--seed", "11", "--burst", "1..60", "--prio", "1..9", "--out", g,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = pbdrr(&["compare", "--policies", "mrr,pbdrr", "--input", g, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let w = parse_workload(&std::fs::read_to_string(g).unwrap(), WorkloadFormat::Csv).unwrap();
    for row in v["rows"].as_array().unwrap() {
        let completions: u64 = row["per_process"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p["completion"].as_u64().unwrap())
            .sum();
        let waits: u64 = row["per_process"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p["waiting"].as_u64().unwrap())
            .sum();
        assert_eq!(completions - waits, w.total_burst());
        let last = row["per_process"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p["completion"].as_u64().unwrap())
            .max();
        assert_eq!(last, Some(w.total_burst()));
    }
}

#[test]
fn gen_is_deterministic() {
    let a = pbdrr(&["gen", "--n", "5", "--seed", "42", "--burst", "1..60", "--prio", "1..5"]);
    let b = pbdrr(&["gen", "--n", "5", "--seed", "42", "--burst", "1..60", "--prio", "1..5"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 6);
    let c = pbdrr(&["gen", "--n", "5", "--seed", "43", "--burst", "1..60", "--prio", "1..5"]);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(pbdrr(&["gen", "--n", "0"]).status.code(), Some(1));
}

#[test]
fn svg_and_text_output() {
    let o = pbdrr(&["run", "--case", "1", "--policy", "pbdrr", "--format", "svg"]);
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg "));
    assert_eq!(svg.matches("<rect ").count(), 17);
    let o = pbdrr(&["run", "--case", "1", "--policy", "pbdrr"]);
    assert!(stdout(&o).contains("gantt: P1[0\u{2013}5] P2[5\u{2013}7] P3[7\u{2013}10] "));
}
