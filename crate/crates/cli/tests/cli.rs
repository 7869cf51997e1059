use std::process::{Command, Output};

fn bicensus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicensus"))
        .args(args)
        .env_remove("BICENSUS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn census_csv_has_header_and_lf_endings() {
    let o = bicensus(&["census", "--k", "1", "--max-n", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("r,s,k,count\n"));
    assert!(!text.contains('\r'));
    assert!(text.lines().any(|l| l == "2,2,1,1"));
    assert!(text.lines().any(|l| l == "3,3,1,78"), "{text}");
}

#[test]
fn oracle_prints_bare_count() {
    let o = bicensus(&["oracle", "--r", "2", "--s", "2", "--q", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    let o = bicensus(&["oracle", "--n", "4", "--q", "3"]);
    assert_eq!(stdout(&o), "16\n");
}

#[test]
fn json_keeps_big_integers_as_strings() {
    let o = bicensus(&["diagonal", "--k", "1", "--n", "11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v[0]["count"],
        serde_json::Value::String("19745850960".into())
    );
}

#[test]
fn verify_all_passes() {
    let o = bicensus(&["verify", "--suite", "all", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_reports_failures_with_exit_one() {
    // The reference N_bi(8,1) has two digits transposed, so this suite fails.
    let o = bicensus(&["verify", "--suite", "fixtures", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["detail"], "census gives 1026480");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        bicensus(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(bicensus(&["census"]).status.code(), Some(2));
    assert_eq!(bicensus(&["diagonal", "--k", "1"]).status.code(), Some(2));
    assert_eq!(
        bicensus(&["oracle", "--r", "6", "--s", "6", "--q", "12"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bicensus(&["census", "--max-n", "4", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = std::env::temp_dir().join(format!("bicensus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("series.json");
    let args = [
        "series",
        "--k",
        "3",
        "--order",
        "6",
        "--format",
        "json",
        "--threads",
        "2",
    ];
    let first = bicensus(&args);
    let second = bicensus(&args);
    assert_eq!(first.stdout, second.stdout);
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    assert_eq!(bicensus(&with_out).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), first.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn asympt_csv_columns() {
    let o = bicensus(&["asympt", "--k", "2", "--n", "11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,exact,predicted,ratio"));
    assert!(lines.next().unwrap().starts_with("11,47478243120,"));
}
