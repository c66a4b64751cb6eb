//! End-to-end checks of the command surface: exit codes, determinism,
//! formats, and numerical round-trips.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qcorr"))
}

fn write_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn orthogonal_pair_file(dir: &tempfile::TempDir) -> PathBuf {
    write_file(
        dir,
        "family.json",
        r#"{"states": [{"bloch": [0, 0, 1]}, {"bloch": [1, 0, 0]}]}"#,
    )
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

#[test]
fn characterize_reports_gram_and_rank() {
    let dir = tempfile::tempdir().unwrap();
    let family = orthogonal_pair_file(&dir);
    let doc = stdout_json(&run(binary().arg("characterize").arg(&family)));
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["m"], 2);
    assert_eq!(doc["rank"], 2);
    assert_eq!(doc["identity_in_span"], false);
    assert_eq!(doc["independent_state_count"], 2);
    assert!((doc["gram_matrix"][0][0].as_f64().unwrap() - 0.25).abs() < 1e-15);
    assert!((doc["gram_matrix"][0][1].as_f64().unwrap()).abs() < 1e-15);
}

#[test]
fn characterize_accepts_matrix_entries() {
    let dir = tempfile::tempdir().unwrap();
    // |0><0| given densely next to a Bloch entry
    let family = write_file(
        &dir,
        "mixed_styles.json",
        r#"{"states": [
            {"matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
            {"bloch": [1, 0, 0]}
        ]}"#,
    );
    let doc = stdout_json(&run(binary().arg("characterize").arg(&family)));
    assert_eq!(doc["rank"], 2);
}

#[test]
fn witness_emits_the_extremal_test() {
    let dir = tempfile::tempdir().unwrap();
    let family = orthogonal_pair_file(&dir);
    let doc = stdout_json(&run(binary()
        .arg("witness")
        .arg(&family)
        .args(["--direction", "1,-1"])));
    assert!(
        (doc["support_value"].as_f64().unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12
    );
    let p = doc["boundary_correlation"].as_array().unwrap();
    assert!((p[0].as_f64().unwrap() - 0.8535533905932737).abs() < 1e-12);
    assert!((p[1].as_f64().unwrap() - 0.14644660940672624).abs() < 1e-10);
    assert!(doc["attainment_residual"].as_f64().unwrap() < 1e-10);
    // all-ones gives the trivial accept test and the all-ones correlation
    let doc = stdout_json(&run(binary()
        .arg("witness")
        .arg(&family)
        .args(["--direction", "1,1"])));
    assert_eq!(doc["extremal_test"]["a"], 1.0);
    assert_eq!(doc["boundary_correlation"][0], 1.0);
}

#[test]
fn test_command_reports_verdicts_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let family = orthogonal_pair_file(&dir);
    let correlations = write_file(
        &dir,
        "correlations.json",
        r#"{"correlations": [[0.9, 0.1], [0.85, 0.15], [0.5, 0.5]]}"#,
    );
    let output = run(binary().arg("test").arg(&family).arg(&correlations));
    assert_eq!(output.status.code(), Some(0), "verdicts are not failures");
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["conclusion"], "refuted");
    assert_eq!(doc["outside_count"], 1);
    assert_eq!(doc["verdicts"][0]["verdict"], "outside");
    assert_eq!(doc["verdicts"][1]["verdict"], "inside");
    // the outside certificate re-verifies from its own fields
    let witness = &doc["verdicts"][0]["outside_witness"];
    let gap =
        witness["correlation_value"].as_f64().unwrap() - witness["support_value"].as_f64().unwrap();
    assert!(gap > 1e-9);
    assert!((witness["gap"].as_f64().unwrap() - gap).abs() < 1e-15);
}

#[test]
fn boundary_csv_has_the_pinned_header_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let family = orthogonal_pair_file(&dir);
    let make = || {
        run(binary().arg("boundary").arg(&family).args([
            "--samples",
            "17",
            "--seed",
            "11",
            "--format",
            "csv",
        ]))
    };
    let first = make();
    let second = make();
    assert_eq!(first.stdout, second.stdout, "same seed, same bytes");
    let text = String::from_utf8(first.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "w_0,w_1,p_0,p_1");
    // 17 samples plus the 256-point ellipse trace
    assert_eq!(lines.count(), 17 + 256);
}

#[test]
fn boundary_json_round_trips_numerically() {
    let dir = tempfile::tempdir().unwrap();
    let family = orthogonal_pair_file(&dir);
    let output =
        run(binary()
            .arg("boundary")
            .arg(&family)
            .args(["--samples", "32", "--seed", "3"]));
    let doc = stdout_json(&output);
    let reserialized = serde_json::to_string(&doc).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(doc, reparsed, "floats survive a serialize/parse cycle");
    assert_eq!(doc["trace"].as_array().unwrap().len(), 256);
}

#[test]
fn oracle_is_sound_on_a_clean_family() {
    let dir = tempfile::tempdir().unwrap();
    let family = orthogonal_pair_file(&dir);
    let output =
        run(binary()
            .arg("oracle")
            .arg(&family)
            .args(["--samples", "2000", "--seed", "5"]));
    assert_eq!(output.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["sound"], true);
    assert_eq!(doc["violations"].as_array().unwrap().len(), 0);
    assert_eq!(doc["empirical_support"].as_array().unwrap().len(), 8);
    for entry in doc["empirical_support"].as_array().unwrap() {
        let empirical = entry["empirical"].as_f64().unwrap();
        let analytic = entry["analytic"].as_f64().unwrap();
        assert!(empirical <= analytic + 1e-10);
        assert!((empirical - analytic).abs() < 1e-10);
    }
}

#[test]
fn apps_pure_pair_reports_coefficients() {
    let doc = stdout_json(&run(binary()
        .args(["apps", "pure-pair", "--alpha"])
        .arg(format!("{}", std::f64::consts::FRAC_PI_2))));
    let coeffs = doc["ellipse_coefficients"].as_array().unwrap();
    assert!((coeffs[0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((coeffs[1].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(doc["ellipse_bound"], 0.5);
    assert!(doc["cross_check_residual"].as_f64().unwrap() < 1e-10);

    let doc = stdout_json(&run(binary().args(["apps", "pure-pair", "--alpha", "0"])));
    assert_eq!(doc["degenerate_constraint"], "p0 = p1");
    assert!(doc["cross_check_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn apps_polygon_reports_the_spectrum() {
    let doc = stdout_json(&run(binary().args(["apps", "polygon", "--m", "4"])));
    let spectrum = doc["spectrum"].as_array().unwrap();
    let expected = [0.0, 0.5, 0.0, 0.5];
    for (entry, e) in spectrum.iter().zip(expected) {
        assert!((entry[0].as_f64().unwrap() - e).abs() < 1e-10);
        assert!(entry[1].as_f64().unwrap().abs() < 1e-10);
    }
    assert!(doc["mub_constraints"].is_object());
    assert_eq!(doc["mub_constraints"]["norm_squared_bound"], 1.5);
    assert!(doc["cross_check_residual"].as_f64().unwrap() < 1e-10);

    let doc = stdout_json(&run(binary().args(["apps", "polygon", "--m", "3"])));
    let spectrum = doc["spectrum"].as_array().unwrap();
    let expected = [0.0, 0.375, 0.375];
    for (entry, e) in spectrum.iter().zip(expected) {
        assert!((entry[0].as_f64().unwrap() - e).abs() < 1e-10);
    }
    assert!(doc["mub_constraints"].is_null());
}

#[test]
fn exit_codes_match_the_contract() {
    let dir = tempfile::tempdir().unwrap();

    // 2: unparseable family file
    let garbled = write_file(&dir, "garbled.json", r#"{"states": [{"bloch": [0, 0"#);
    let output = run(binary().arg("characterize").arg(&garbled));
    assert_eq!(output.status.code(), Some(2));
    assert!(!output.stderr.is_empty(), "diagnostics go to stderr");

    // 2: missing file
    let output = run(binary()
        .arg("characterize")
        .arg(dir.path().join("absent.json")));
    assert_eq!(output.status.code(), Some(2));

    // 3: Bloch vector outside the sphere
    let invalid = write_file(
        &dir,
        "invalid.json",
        r#"{"states": [{"bloch": [0.8, 0.8, 0.0]}]}"#,
    );
    let output = run(binary().arg("characterize").arg(&invalid));
    assert_eq!(output.status.code(), Some(3));

    // 4: direction length does not match the family
    let family = orthogonal_pair_file(&dir);
    let output = run(binary()
        .arg("witness")
        .arg(&family)
        .args(["--direction", "1,-1,2"]));
    assert_eq!(output.status.code(), Some(4));

    // 4: out-of-range application parameter
    let output = run(binary().args(["apps", "polygon", "--m", "1"]));
    assert_eq!(output.status.code(), Some(4));
    let output = run(binary().args(["apps", "pure-pair", "--alpha", "4.0"]));
    assert_eq!(output.status.code(), Some(4));

    // 4: correlation vectors of the wrong length
    let bad_corr = write_file(
        &dir,
        "bad_corr.json",
        r#"{"correlations": [[0.5, 0.5, 0.5]]}"#,
    );
    let output = run(binary().arg("test").arg(&family).arg(&bad_corr));
    assert_eq!(output.status.code(), Some(4));
}
