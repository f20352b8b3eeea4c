//! End-to-end checks of the command-line surface: exit codes, output
//! determinism, JSON shape, overrides, and file output.

use sdqc_eval::cli::run;

fn capture(args: &[&str]) -> (i32, String) {
    let mut buffer = Vec::new();
    let code = run(args, &mut buffer);
    (code, String::from_utf8(buffer).expect("output is UTF-8"))
}

fn temp_path(name: &str) -> std::path::PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("sdqc-eval-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "sdqc-eval",
        "sweep",
        "--app",
        "fermi",
        "--arch",
        "all",
        "-d",
        "3,13",
        "--lambda",
        "log:0.5:50:5",
    ];
    let (code_a, text_a) = capture(&args);
    let (code_b, text_b) = capture(&args);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(text_a, text_b);
    assert_eq!(text_a.lines().count(), 1 + 2 * 3 * 5);
}

#[test]
fn sweep_json_mirrors_the_rows() {
    let (code, text) = capture(&[
        "sdqc-eval",
        "sweep",
        "--app",
        "ecdlp",
        "--arch",
        "sdqc,qccd",
        "-d",
        "13",
        "--lambda",
        "10",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let docs: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = docs.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert!(row["error"].is_null());
        assert_eq!(row["result"]["code_distance"], 13);
        assert_eq!(row["scenario"]["improvements"]["lambda"], 10.0);
    }
}

#[test]
fn set_overrides_reach_the_model() {
    let (_, base) = capture(&["sdqc-eval", "timing", "--arch", "sdqc", "-d", "13"]);
    let (code, adjusted) = capture(&[
        "sdqc-eval",
        "timing",
        "--arch",
        "sdqc",
        "-d",
        "13",
        "--set",
        "times.cooling_us=100",
    ]);
    assert_eq!(code, 0);
    assert!(base.lines().nth(1).unwrap().contains("1716.000"));
    assert!(adjusted.lines().nth(1).unwrap().contains("1516.000"), "{adjusted}");
}

#[test]
fn bad_set_path_is_a_usage_error() {
    let (code, _) = capture(&[
        "sdqc-eval",
        "timing",
        "--set",
        "errors.not_a_field=1",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let (code, _) = capture(&["sdqc-eval", "frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let (code, _) = capture(&["sdqc-eval", "evaluate"]);
    assert_eq!(code, 1);
}

#[test]
fn out_flag_writes_the_file_instead_of_stdout() {
    let path = temp_path("layout.csv");
    let path_str = path.to_str().unwrap();
    let (code, text) = capture(&[
        "sdqc-eval", "layout", "--arch", "sdqc", "-d", "13", "--out", path_str,
    ]);
    assert_eq!(code, 0);
    assert!(text.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 1 + 6);
    assert!(written.starts_with("arch,d,chain,"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn layout_json_carries_counts_and_chains() {
    let (code, text) = capture(&[
        "sdqc-eval", "layout", "--arch", "sdqc", "-d", "13", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let docs: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(docs[0]["counts"]["n_physical"], 253);
    assert_eq!(docs[0]["max_chain"], 58);
    assert_eq!(docs[0]["chains"].as_array().unwrap().len(), 6);
}

#[test]
fn errors_rows_keep_their_bounds_ordered() {
    let (code, text) = capture(&[
        "sdqc-eval",
        "errors",
        "--arch",
        "sdqc",
        "-d",
        "13",
        "--p-trans",
        "log:1e-6:1e-2:9",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 9);
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        let central: f64 = cells[6].parse().unwrap();
        let lower: f64 = cells[7].parse().unwrap();
        let upper: f64 = cells[8].parse().unwrap();
        assert!(lower <= central && central <= upper, "{line}");
        assert!(cells[9] == "transversal_dominated" || cells[9] == "syndrome_dominated");
    }
}

#[test]
fn validate_passes_with_a_reduced_budget() {
    let (code, text) = capture(&[
        "sdqc-eval", "validate", "--mc-trials", "200000",
    ]);
    assert_eq!(code, 0);
    assert!(text.starts_with("id,status,"));
    assert!(!text.contains(",FAIL,"));
}

#[test]
fn validate_json_lists_every_case_as_passed() {
    let (code, text) = capture(&[
        "sdqc-eval", "validate", "--mc-trials", "200000", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let cases: serde_json::Value = serde_json::from_str(&text).unwrap();
    let cases = cases.as_array().unwrap();
    assert!(cases.len() >= 70);
    assert!(cases.iter().all(|c| c["passed"] == true));
}

#[test]
fn frontier_marks_unreachable_targets() {
    let (code, text) = capture(&[
        "sdqc-eval", "frontier", "--app", "ecdlp", "--arch", "photonic", "-d", "3",
        "--target", "0.999999",
    ]);
    assert_eq!(code, 0);
    let row = text.lines().nth(1).unwrap();
    assert!(row.ends_with(','), "lambda_star should be empty: {row}");
}
