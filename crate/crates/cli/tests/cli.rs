use std::path::PathBuf;
use std::process::{Command, Output};

use turankit_core::scalar::parse_rational;
use turankit_core::{CriterionReport, Scalar};

const SIEVED_THIRD: &str =
    r#"{"family":"sieved2","base":{"family":"custom","prefix":[],"tail":{"kind":"constant","value":"1/3"}}}"#;
const QUARTER_PREFIX: &str =
    r#"{"family":"custom","prefix":["1/4","1/4"],"tail":{"kind":"constant","value":"1/2"}}"#;

fn turankit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turankit")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("turankit-{}-{name}", std::process::id()))
}

/// Plain float recurrence for the 2-sieved constant sequence.
fn sieved_delta(base: f64, x: f64, n: usize) -> f64 {
    let c = |k: usize| if k % 2 == 1 { 0.5 } else { base };
    let mut p = vec![1.0, x];
    for k in 1..=n {
        p.push((x * p[k] - c(k) * p[k - 1]) / (1.0 - c(k)));
    }
    p[n] * p[n] - p[n + 1] * p[n - 1]
}

#[test]
fn sieved_delta_four_is_negative() {
    let out =
        turankit(&["turan", "--spec", SIEVED_THIRD, "--x", "19/20", "--n-max", "5", "--backend", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["x", "n", "delta", "approx"]);
    assert_eq!(rows.len(), 5);
    let row = rows.iter().find(|r| r[1] == "4").unwrap();
    assert_eq!(row[0], "19/20");
    let delta = parse_rational(&row[2]).unwrap();
    let value = delta.to_f64();
    assert_eq!((value * 1000.0).round(), -3.0);
    assert!((value - sieved_delta(1.0 / 3.0, 0.95, 4)).abs() < 1e-15);
}

#[test]
fn derived_dump_has_chain_counterexample() {
    let out = turankit(&["derived", "--spec", QUARTER_PREFIX, "--M", "2", "--N", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["m", "n", "c", "a", "C", "s", "t"]);
    let cell = |m: &str, n: &str| rows.iter().find(|r| r[0] == m && r[1] == n).unwrap()[2].clone();
    assert_eq!(cell("2", "1"), "33/208");
    assert_eq!(cell("1", "2"), "2/13");
}

#[test]
fn chebyshev_verify_is_exact() {
    let out = turankit(&["verify", "--spec", r#"{"family":"constant-half"}"#, "--n-max", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&out));
    let (res, pass) = (column(&header, "residual"), column(&header, "pass"));
    assert!(rows.len() > 1000);
    for row in &rows {
        assert_eq!(row[res], "0/1", "{row:?}");
        assert_eq!(row[pass], "true");
    }
    assert!(rows.iter().any(|r| r[0] == "chebyshev-baseline" && r[1] == "30"));
}

#[test]
fn gencheb_verify_both_backends() {
    let spec = r#"{"family":"gencheb","alpha":"1","beta":"-1/4"}"#;
    for backend in ["exact", "float"] {
        let out = turankit(&["verify", "--spec", spec, "--n-max", "8", "--backend", backend]);
        assert_eq!(out.status.code(), Some(0), "{backend}: {}", stdout(&out));
        let text = stdout(&out);
        for check in ["odd-1", "even-2", "zero-expansion", "quadratic-odd", "paired-recurrence"] {
            assert!(text.lines().any(|l| l.starts_with(check)), "{backend}: missing {check}");
        }
    }
}

#[test]
fn jacobi_determinants_vanish_at_one() {
    let spec = r#"{"family":"jacobi","alpha":"1/2","beta":"-1/3"}"#;
    let out = turankit(&["turan", "--spec", spec, "--x", "1", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&out));
    assert!(rows.iter().all(|r| r[2] == "0/1"), "{rows:?}");

    let out = turankit(&["verify", "--spec", spec, "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn criteria_json_round_trips() {
    let spec = r#"{"family":"gencheb","alpha":"1/2","beta":"-1/4"}"#;
    let out = turankit(&["criteria", "--spec", spec, "--format", "json", "--n-max", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let reports: Vec<CriterionReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(CriterionReport::is_consistent));
    let again: serde_json::Value = serde_json::to_value(&reports).unwrap();
    assert_eq!(again, serde_json::from_str::<serde_json::Value>(&text).unwrap());
}

#[test]
fn exact_values_survive_json() {
    let args = ["turan", "--spec", SIEVED_THIRD, "--x", "9/10", "--x", "-1/3", "--n-max", "8"];
    let csv_out = stdout(&turankit(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json: Vec<serde_json::Map<String, serde_json::Value>> =
        serde_json::from_str(&stdout(&turankit(&json_args))).unwrap();
    let (_, rows) = csv_rows(&csv_out);
    assert_eq!(rows.len(), json.len());
    for (row, obj) in rows.iter().zip(&json) {
        let delta = obj["delta"].as_str().unwrap();
        assert_eq!(delta, row[2]);
        assert_eq!(parse_rational(delta).unwrap().to_text(), delta);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--spec", r#"{"family":"gencheb","alpha":"0","beta":"-1/2"}"#, "--n-max", "6"];
    let first = turankit(&args).stdout;
    let second = turankit(&args).stdout;
    let single = Command::new(env!("CARGO_BIN_EXE_turankit"))
        .args(args)
        .env("TURANKIT_THREADS", "1")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(first, second);
    assert_eq!(first, single);
    assert!(!first.contains(&b'\r'));
}

#[test]
fn expect_pass_controls_exit_status() {
    let args = ["criteria", "--spec", SIEVED_THIRD, "--n-max", "12"];
    assert_eq!(turankit(&args).status.code(), Some(0));
    let mut strict = args.to_vec();
    strict.push("--expect-pass");
    assert_eq!(turankit(&strict).status.code(), Some(1));

    let good = [
        "criteria",
        "--spec",
        r#"{"family":"gencheb","alpha":"1","beta":"-1/2"}"#,
        "--criterion",
        "abc",
        "--expect-pass",
    ];
    assert_eq!(turankit(&good).status.code(), Some(0));
}

#[test]
fn malformed_specs_exit_two() {
    let out = turankit(&["turan", "--spec", "{\"family\":\"custom\",\n\"prefix\":[}"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = turankit(&["turan", "--spec", r#"{"family":"custom","prefix":["1/4","oops"]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("prefix[1]"));

    let out = turankit(&["eval", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(turankit(&["eval"]).status.code(), Some(2));
}

#[test]
fn bare_numbers_need_float_backend() {
    let spec = r#"{"family":"custom","prefix":[0.25],"tail":{"kind":"constant","value":"1/2"}}"#;
    assert_eq!(turankit(&["turan", "--spec", spec]).status.code(), Some(2));
    assert_eq!(turankit(&["turan", "--spec", spec, "--backend", "float"]).status.code(), Some(0));
}

#[test]
fn spec_file_and_out_path() {
    let spec = scratch("spec.json");
    let out = scratch("out.csv");
    std::fs::write(&spec, QUARTER_PREFIX).unwrap();
    let status = turankit(&[
        "eval",
        "--spec-file",
        spec.to_str().unwrap(),
        "--x",
        "1/2",
        "--n-max",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    // P_1 = x, P_2 = (x² - 1/4)/(3/4).
    assert_eq!(written.lines().nth(3).unwrap().split(',').nth(2), Some("0/1"));
    assert_eq!(written.lines().nth(2).unwrap().split(',').nth(2), Some("1/2"));
    std::fs::remove_file(spec).ok();
    std::fs::remove_file(out).ok();
}

#[test]
fn families_are_listed() {
    let out = turankit(&["families"]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&out));
    let names: Vec<_> = rows.iter().map(|r| r[0].as_str()).collect();
    for family in ["constant-half", "gencheb", "custom", "sieved2", "sieved3-ultra-quarter", "jacobi"] {
        assert!(names.contains(&family));
    }
}

#[test]
fn plot_columns_follow_request() {
    let out = turankit(&[
        "scan",
        "--spec",
        r#"{"family":"constant-half"}"#,
        "--plot-n",
        "2,5",
        "--rational-grid",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["x", "delta_2", "delta_5"]);
    assert_eq!(rows.len(), 9);
    for row in rows {
        let x: f64 = row[0].parse().unwrap();
        for v in &row[1..] {
            assert!((v.parse::<f64>().unwrap() - (1.0 - x * x)).abs() < 1e-15);
        }
    }
}
