use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_platycosm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_csv_has_six_rows_per_index() {
    let o = run(&["count", "--ambient", "b3", "--n", "1..8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("#schema_version=1"));
    assert_eq!(lines.next(), Some("ambient,kind,iso_type,n,value"));
    assert_eq!(lines.count(), 48);
    assert!(text.contains("B3,SUBGROUPS,B3,3,7\n"));
}

#[test]
fn count_json_is_deterministic() {
    let args = ["count", "--ambient", "gamma", "--n", "1..16", "--kind", "classes", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 32);
}

#[test]
fn enumerate_json_lists_matrices() {
    let o = run(&["enumerate", "--ambient", "b3", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let items = v["items"].as_array().unwrap();
    assert_eq!(items.len(), 7);
    assert_eq!(items[0]["ambient"], "B3");
    assert!(items.iter().all(|i| i["iso_type"].is_string() && i["f"].is_i64()));
}

#[test]
fn enumerate_classes_reports_orbit_sizes() {
    let o = run(&["enumerate", "--ambient", "gamma", "--n", "4", "--classes", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.contains("GAMMA,4,1,1,0,0,0,KLEIN,2\n"));
    assert_eq!(text.lines().count(), 2 + 5);
}

#[test]
fn classify_prints_type_and_generators() {
    let o = run(&["classify", "--ambient", "b3", "--matrix", "2,1,1,1,0,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["iso_type"], "B3");
    assert_eq!(v["case"], 7);
    assert_eq!(v["generators"][2], "x z");
}

#[test]
fn classify_rejects_a_non_matrix() {
    let o = run(&["classify", "--ambient", "b3", "--matrix", "2,1,1,1,1,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["classify", "--ambient", "gamma", "--matrix", "2,1,1,1,1,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_gamma_passes() {
    let o = run(&["verify", "--ambient", "gamma", "--max-n", "200", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_b4_small_sweep_passes() {
    let o = run(&["verify", "--ambient", "b4", "--max-n", "16", "--formula-max-n", "128"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_reports_the_z3_count_mismatch() {
    let o = run(&["verify", "--ambient", "z3", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("n=2: formula 4 vs oracle 7"), "{err}");
}

#[test]
fn verify_over_budget_is_a_usage_error() {
    let o = run(&["verify", "--ambient", "b3", "--max-n", "49"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn series_bfile_for_a_matching_row() {
    let o =
        run(&["series", "--ambient", "b3", "--type", "b3", "--kind", "subgroups", "--len", "4", "--format", "bfile"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "# B3 SUBGROUPS B3 match\n1 1\n2 2\n3 7\n4 4\n");
}

#[test]
fn series_flags_the_tabulated_g2_class_rows() {
    let o = run(&["series", "--ambient", "b4", "--kind", "classes", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let bad: Vec<_> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["status"] != "match")
        .map(|e| e["iso_type"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(bad, ["G2"]);
}

#[test]
fn series_writes_files() {
    let dir = std::env::temp_dir().join(format!("platycosm-series-{}", std::process::id()));
    let o = run(&[
        "series",
        "--ambient",
        "gamma",
        "--len",
        "10",
        "--format",
        "json",
        "--output-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 4);
    let text = std::fs::read_to_string(dir.join("gamma-subgroups-klein.json")).unwrap();
    assert!(text.contains("\"status\": \"match\""));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn output_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("platycosm-count-{}.csv", std::process::id()));
    let o = run(&["count", "--ambient", "b4", "--n", "3", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("B4,SUBGROUPS,B4,3,7"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["count", "--ambient", "b9", "--n", "1"][..],
        &["count", "--ambient", "b3", "--n", "5..2"],
        &["count", "--ambient", "z3", "--n", "4"],
        &["enumerate", "--ambient", "b3", "--n", "513"],
        &["series", "--ambient", "z2"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
