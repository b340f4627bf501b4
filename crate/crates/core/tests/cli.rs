use std::process::{Command, Output};

use serde_json::Value;

fn ptscatter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptscatter"))
        .args(args)
        .env_remove("PTSCATTER_JOBS")
        .output()
        .expect("spawn ptscatter")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

const SWEEP: &[&str] = &[
    "sweep", "--v1", "1", "--v2", "7.75", "--kmin", "0.5", "--kmax", "3", "-n", "40", "--side", "both",
];

#[test]
fn sweep_output_is_byte_identical_across_runs_and_thread_counts() {
    let a = ptscatter(&[SWEEP, &["--jobs", "1"]].concat());
    let b = ptscatter(&[SWEEP, &["--jobs", "4"]].concat());
    let c = ptscatter(SWEEP);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn csv_layout() {
    let out = ptscatter(SWEEP);
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        header,
        [
            "k",
            "E",
            "T_analytic",
            "T_numeric",
            "R_left",
            "flux_defect_left",
            "R_right",
            "flux_defect_right",
            "rel_discrepancy"
        ]
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 40);
    for row in rows {
        for field in row.split(',') {
            let mantissa = field.split('e').next().unwrap().trim_start_matches('-');
            let digits = mantissa.chars().filter(char::is_ascii_digit).count();
            assert_eq!(digits, 17, "field {field}");
            let _: f64 = field.parse().unwrap();
        }
    }
}

#[test]
fn json_carries_params_rows_and_meta() {
    let out = ptscatter(&["spectrum", "--v1", "6", "--v2", "0", "--format", "json", "--domain-L", "20"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["params"]["phase"], "UNBROKEN");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["re_E"], -4.0);
    assert_eq!(rows[1]["re_E"], -1.0);
    assert_eq!(v["meta"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["meta"]["rel_tol"], 1e-10);
    assert_eq!(v["meta"]["sing_tol"], 1e-9);
    assert_eq!(v["meta"]["domain_L"], 20.0);
    assert_eq!(v["meta"]["integer_part_level_counting"].as_array().unwrap().len(), 4);
}

#[test]
fn pole_in_analytic_column_is_spelled_inf() {
    let out = ptscatter(&[
        "sweep", "--v1", "1", "--v2", "7.75", "--emin", "1.625", "--emax", "1.625", "-n", "1", "--mode", "analytic",
    ]);
    let text = stdout(&out);
    assert_eq!(text.lines().nth(1).unwrap().split(',').nth(2), Some("Inf"));
}

#[test]
fn singularity_solve_reports_numeric_confirmation() {
    let out = ptscatter(&["singularity", "--v1", "-1", "--n", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &v["rows"][0];
    assert_eq!(row["v2"], 9.75);
    assert_eq!(row["e_star"], 2.625);
    assert_eq!(row["satisfied"], true);
    assert!(row["T_numeric_at_e_star"].as_f64().unwrap() > 1e4);
    assert!(row["T_numeric_below"].as_f64().unwrap() < 1e2);
}

#[test]
fn positivity_failure_exits_one_with_message() {
    let out = ptscatter(&["singularity", "--v1", "5", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no spectral singularity for v1 = 5, n = 1"));
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_flags_exit_one() {
    for args in [
        &["sweep", "--v1", "1", "--v2", "1", "--kmin", "2", "--kmax", "1"][..],
        &["sweep", "--v1", "1", "--v2", "1", "--kmin", "0", "--kmax", "1"],
        &["sweep", "--v1", "1", "--v2", "1"],
        &["spectrum", "--v1", "1", "--v2", "1", "--rel-tol", "0.5"],
        &["spectrum", "--v1", "1", "--v2", "1", "--sing-tol", "-1"],
        &["spectrum", "--v1", "nan", "--v2", "1"],
        &["scan2d", "--v1-min", "0", "--v1-max", "1", "--v2-min", "0", "--v2-max", "1", "--nv1", "2000", "--nv2", "2000"],
        &["poles", "--v1", "1", "--v2", "1", "--re-min", "-1", "--re-max", "1", "--im-min", "-1", "--im-max", "1"],
        &["frobnicate"],
    ] {
        let out = ptscatter(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn jobs_default_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ptscatter"))
        .args(["spectrum", "--v1", "1", "--v2", "1"])
        .env("PTSCATTER_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--jobs"));
}

#[test]
fn nonconvergence_exits_two() {
    let out = ptscatter(&["poles", "--v1", "0", "--v2", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout_and_failures_leave_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let p = path.to_str().unwrap();
    let scan = ["scan2d", "--v1-min", "-1", "--v1-max", "2", "--nv1", "13", "--v2-min", "7", "--v2-max", "10", "--nv2", "13"];

    let ok = ptscatter(&[&scan[..], &["--output", p]].concat());
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), ptscatter(&scan).stdout);

    let bad_path = dir.path().join("bad.csv");
    let bad = ptscatter(&[&scan[..], &["--nv1", "0", "--output", bad_path.to_str().unwrap()]].concat());
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad_path.exists());
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names, vec![std::ffi::OsString::from("scan.csv")]);
}

#[test]
fn scan2d_marks_the_singular_cell() {
    let out = ptscatter(&["scan2d", "--v1-min", "1", "--v1-max", "1", "--nv1", "1", "--v2-min", "7.5", "--v2-max", "8", "--nv2", "3"]);
    let text = stdout(&out);
    let singular: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(singular, ["false", "true", "false"]);
}

#[test]
fn validate_passes_and_fails_under_truncation() {
    let good = ptscatter(&["validate"]);
    assert_eq!(good.status.code(), Some(0), "{}", stderr(&good));
    let v: Value = serde_json::from_str(&stdout(&good)).unwrap();
    assert_eq!(v["meta"]["passed"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 10);

    let bad = ptscatter(&["validate", "--domain-L", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&bad)).unwrap();
    let failed: Vec<&str> = v["meta"]["failed"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(failed.contains(&"2"));
}
