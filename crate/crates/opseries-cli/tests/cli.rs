//! End-to-end tests that spawn the compiled binary and inspect its
//! stdout, stderr and exit codes. Every spawn clears OPSERIES_MAX_TERMS
//! so an inherited environment cannot skew the defaults under test.

use std::process::{Command, Output};

const HEADER: &str = "function,x,y,re,im,abs_err_est,terms,converged,method";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opseries"))
        .args(args)
        .env_remove("OPSERIES_MAX_TERMS")
        .output()
        .expect("binary failed to spawn")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opseries"))
        .args(args)
        .env_remove("OPSERIES_MAX_TERMS")
        .env(key, value)
        .output()
        .expect("binary failed to spawn")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout was not utf-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr was not utf-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process was killed by a signal")
}

/// Parses CSV output into rows of fields, checking the header line.
fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    let text = stdout_str(out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER), "header line mismatch");
    lines
        .map(|line| line.split(',').map(str::to_owned).collect())
        .collect()
}

fn field_f64(row: &[String], idx: usize) -> f64 {
    row[idx].parse().unwrap_or_else(|_| {
        panic!("field {idx} of {row:?} is not a float");
    })
}

/// Checks one real field against the fixed-width scientific format the
/// CSV contract pins: a sign, one lead digit, sixteen fractional digits
/// and a bare decimal exponent.
fn assert_sci_format(field: &str) {
    let body = field.strip_prefix('-').unwrap_or(field);
    let (mantissa, exponent) = body.split_once('e').unwrap_or_else(|| {
        panic!("no exponent in {field:?}");
    });
    let (lead, frac) = mantissa.split_once('.').unwrap_or_else(|| {
        panic!("no decimal point in {field:?}");
    });
    assert_eq!(lead.len(), 1, "lead digit of {field:?}");
    assert!(lead.chars().all(|c| c.is_ascii_digit()), "lead of {field:?}");
    assert_eq!(frac.len(), 16, "fraction width of {field:?}");
    assert!(frac.chars().all(|c| c.is_ascii_digit()), "fraction of {field:?}");
    let exp_body = exponent.strip_prefix('-').unwrap_or(exponent);
    assert!(!exp_body.is_empty(), "empty exponent in {field:?}");
    assert!(
        exp_body.chars().all(|c| c.is_ascii_digit()),
        "exponent of {field:?}"
    );
}

#[test]
fn eval_symbol_closed_form_point() {
    let out = run(&["eval", "--function", "csym", "--alpha", "2", "--beta", "0"]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert_eq!(row[0], "csym");
    assert_eq!(field_f64(row, 1), 2.0);
    assert_eq!(field_f64(row, 2), 0.0);
    let expected = 0.5 * std::f64::consts::PI.sqrt() * 0.5_f64.sqrt();
    assert!((field_f64(row, 3) - expected).abs() < 1e-12);
    assert!((field_f64(row, 4) - expected).abs() < 1e-12);
    assert_eq!(row[6], "0");
    assert_eq!(row[7], "true");
    assert_eq!(row[8], "closed-form");
}

#[test]
fn eval_airy_at_origin() {
    let out = run(&["eval", "--function", "ai", "--x", "0"]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert!((field_f64(row, 3) - 0.355_028_053_887_817_2).abs() < 1e-9);
    assert_eq!(field_f64(row, 4), 0.0);
    assert_eq!(row[7], "true");
    assert_eq!(row[8], "series");
}

#[test]
fn eval_airy_quadrature_matches_reference() {
    let out = run(&[
        "eval",
        "--function",
        "ai",
        "--x",
        "1",
        "--method",
        "quadrature",
    ]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&out);
    let row = &rows[0];
    assert!((field_f64(row, 3) - 0.135_292_416_313).abs() < 1e-9);
    assert!(field_f64(row, 4).abs() < 1e-9);
    assert_eq!(row[8], "quadrature");
}

#[test]
fn pearcey_origin_agrees_with_quartic_symbol() {
    let pearcey = run(&[
        "eval",
        "--function",
        "pearcey-halfline",
        "--x",
        "0",
        "--y",
        "0",
        "--method",
        "hermite",
    ]);
    let symbol = run(&["eval", "--function", "csym", "--alpha", "4", "--beta", "0"]);
    assert_eq!(exit_code(&pearcey), 0);
    assert_eq!(exit_code(&symbol), 0);
    let prow = &csv_rows(&pearcey)[0];
    let srow = &csv_rows(&symbol)[0];
    assert!((field_f64(prow, 3) - field_f64(srow, 3)).abs() < 1e-12);
    assert!((field_f64(prow, 4) - field_f64(srow, 4)).abs() < 1e-12);
    assert_eq!(prow[8], "hermite");
}

#[test]
fn quartic_variants_disagree_beyond_series_noise() {
    let verbatim = run(&[
        "eval",
        "--function",
        "ai4",
        "--x",
        "0.5",
        "--variant",
        "verbatim",
    ]);
    let corrected = run(&[
        "eval",
        "--function",
        "ai4",
        "--x",
        "0.5",
        "--variant",
        "corrected",
    ]);
    assert_eq!(exit_code(&verbatim), 0);
    assert_eq!(exit_code(&corrected), 0);
    let vrow = &csv_rows(&verbatim)[0];
    let crow = &csv_rows(&corrected)[0];
    let gap = (field_f64(vrow, 3) - field_f64(crow, 3)).abs();
    assert!(gap > 1e-4, "variant gap {gap:e} unexpectedly small");
}

#[test]
fn table_pins_grid_endpoints_exactly() {
    let out = run(&[
        "table",
        "--function",
        "ai",
        "--x-min=-2",
        "--x-max=2",
        "--x-steps=5",
    ]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 5);
    let xs: Vec<f64> = rows.iter().map(|r| field_f64(r, 1)).collect();
    assert_eq!(xs, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
}

#[test]
fn table_single_step_emits_only_the_lower_bound() {
    let out = run(&[
        "table",
        "--function",
        "ai",
        "--x-min=0.25",
        "--x-max=7",
        "--x-steps=1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!(field_f64(&rows[0], 1), 0.25);
}

#[test]
fn table_grid_is_x_major_and_complete() {
    let out = run(&[
        "table",
        "--function",
        "pearcey-halfline",
        "--x-min=-1",
        "--x-max=1",
        "--x-steps=3",
        "--y-min=-1",
        "--y-max=1",
        "--y-steps=3",
    ]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 9);
    // x varies slowest, y fastest; both endpoints exact.
    assert_eq!(field_f64(&rows[0], 1), -1.0);
    assert_eq!(field_f64(&rows[0], 2), -1.0);
    assert_eq!(field_f64(&rows[2], 1), -1.0);
    assert_eq!(field_f64(&rows[2], 2), 1.0);
    assert_eq!(field_f64(&rows[8], 1), 1.0);
    assert_eq!(field_f64(&rows[8], 2), 1.0);
}

#[test]
fn table_output_is_byte_deterministic() {
    let args = [
        "table",
        "--function",
        "pearcey-halfline",
        "--x-min=-1",
        "--x-max=1",
        "--x-steps=4",
        "--y-min=-0.5",
        "--y-max=0.5",
        "--y-steps=3",
        "--method",
        "double-sum",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(exit_code(&second), 0);
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn csv_reals_use_fixed_width_scientific_notation() {
    let out = run(&[
        "table",
        "--function",
        "ai",
        "--x-min=-2",
        "--x-max=2",
        "--x-steps=5",
    ]);
    for row in csv_rows(&out) {
        for idx in 1..=5 {
            assert_sci_format(&row[idx]);
        }
    }
}

#[test]
fn json_records_carry_exactly_the_contract_fields() {
    let out = run(&[
        "eval",
        "--function",
        "ai",
        "--x",
        "0.5",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout_str(&out)).expect("stdout was not JSON");
    let records = parsed.as_array().expect("top level must be an array");
    assert_eq!(records.len(), 1);
    let map = records[0].as_object().expect("record must be an object");
    let mut keys: Vec<&str> = map.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        [
            "abs_err_est",
            "converged",
            "function_id",
            "im",
            "method",
            "re",
            "terms",
            "x",
            "y",
        ]
    );
    assert_eq!(map["function_id"], "ai");
    assert_eq!(map["method"], "series");
    assert_eq!(map["converged"], true);
}

#[test]
fn truncated_series_reports_failure_through_the_exit_code() {
    let out = run(&[
        "eval",
        "--function",
        "ai",
        "--x",
        "1",
        "--max-terms",
        "3",
    ]);
    assert_eq!(exit_code(&out), 1);
    let rows = csv_rows(&out);
    assert_eq!(rows[0][6], "3");
    assert_eq!(rows[0][7], "false");
}

#[test]
fn term_cap_env_var_is_honored_and_flag_takes_precedence() {
    let capped = run_with_env(
        &["eval", "--function", "ai", "--x", "1"],
        "OPSERIES_MAX_TERMS",
        "3",
    );
    assert_eq!(exit_code(&capped), 1);
    assert_eq!(csv_rows(&capped)[0][7], "false");

    let overridden = run_with_env(
        &["eval", "--function", "ai", "--x", "1", "--max-terms", "500"],
        "OPSERIES_MAX_TERMS",
        "3",
    );
    assert_eq!(exit_code(&overridden), 0);
    assert_eq!(csv_rows(&overridden)[0][7], "true");

    let garbage = run_with_env(
        &["eval", "--function", "ai", "--x", "1"],
        "OPSERIES_MAX_TERMS",
        "junk",
    );
    assert_eq!(exit_code(&garbage), 2);
    assert!(stderr_str(&garbage).contains("OPSERIES_MAX_TERMS"));
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        // Missing required coordinate.
        &["eval", "--function", "ai"],
        // Out of the series convergence domain.
        &["eval", "--function", "ai", "--x", "9"],
        // Selector flags that do not apply to the function.
        &["eval", "--function", "ai", "--x", "1", "--variant", "corrected"],
        &["eval", "--function", "ai", "--x", "1", "--y", "2"],
        &["eval", "--function", "ai", "--x", "1", "--method", "hermite"],
        // Wrong coordinate set for the function.
        &["eval", "--function", "csym", "--x", "1"],
        &["eval", "--function", "pearcey-halfline", "--x", "0"],
        // Nonsensical tuning values.
        &["eval", "--function", "ai", "--x", "1", "--tol", "0"],
        &["eval", "--function", "ai", "--x", "1", "--tol", "-1e-9"],
        // Unknown enum values are caught by the parser itself.
        &["check", "--suite", "imaginary"],
        &["eval", "--function", "nope", "--x", "1"],
        // Table for a two-variable function without the y axis.
        &[
            "table",
            "--function",
            "pearcey-halfline",
            "--x-min=-1",
            "--x-max=1",
            "--x-steps=3",
        ],
        // Partial y axis trio.
        &[
            "table",
            "--function",
            "pearcey-halfline",
            "--x-min=-1",
            "--x-max=1",
            "--x-steps=3",
            "--y-min=-1",
        ],
        // Fixture override outside the full run.
        &["check", "--suite", "ode", "--fixtures", "/dev/null"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(
            exit_code(&out),
            2,
            "expected usage failure for {args:?}, stderr: {}",
            stderr_str(&out)
        );
        assert!(out.stdout.is_empty(), "no records expected for {args:?}");
    }
}

#[test]
fn check_suite_ode_passes() {
    let out = run(&["check", "--suite", "ode"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    assert!(text.contains("[PASS] ode"), "stdout: {text}");
    assert!(!text.contains("[FAIL]"), "stdout: {text}");
}

#[test]
fn check_all_rejects_garbage_fixture_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("garbage.txt");
    std::fs::write(&path, "this is not a fixture\n").expect("write");
    let out = run(&["check", "--suite", "all", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let text = stdout_str(&out);
    assert!(text.contains("[FAIL] fixture"), "stdout: {text}");
}

#[test]
fn check_all_detects_value_corruption_in_fixture() {
    // Copy the shipped fixture but perturb the first stored value far
    // past the comparison tolerance.
    let pinned = opseries::oracle::PINNED_FIXTURE;
    let mut corrupted = String::new();
    let mut poisoned = false;
    for line in pinned.lines() {
        if !poisoned && !line.starts_with('#') && !line.trim().is_empty() {
            let mut fields: Vec<&str> = line.split_whitespace().collect();
            let bumped = format!("{}", field_to_f64(fields[3]) + 1.0e-3);
            fields[3] = &bumped;
            corrupted.push_str(&fields.join(" "));
            poisoned = true;
        } else {
            corrupted.push_str(line);
        }
        corrupted.push('\n');
    }
    assert!(poisoned, "fixture had no data lines to corrupt");
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("corrupt.txt");
    std::fs::write(&path, corrupted).expect("write");
    let out = run(&["check", "--suite", "all", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let text = stdout_str(&out);
    assert!(text.contains("[FAIL] fixture"), "stdout: {text}");
}

fn field_to_f64(field: &str) -> f64 {
    field.parse().expect("fixture field was not a float")
}
