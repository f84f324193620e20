//! End-to-end checks of the compiled binary: exit codes, output schemas,
//! byte determinism, and physical sanity of each subcommand.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pointscatter_core::cases::{instantiate, SpecialCaseId};
use pointscatter_core::resonance::{find_resonances, PoleSearch};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pointscatter"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).expect("config should write");
    path
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be utf-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process should exit normally")
}

/// Splits a CSV payload into data rows, skipping the header and any
/// trailing comment lines.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn cell_f64(row: &[String], idx: usize) -> f64 {
    row[idx].parse().expect("cell should parse as f64")
}

#[test]
fn convert_reports_the_boundary_matrix_for_strength_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "conv.json",
        r#"{"mass": 2, "separation": 1, "interaction": {"strengths": {
            "point1": {"scalar": 1, "electrostatic": 1},
            "point2": {"scalar": 1, "electrostatic": 1}}}}"#,
    );
    let out = run(&["convert", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let lam = &v["point1"]["lambda"];
    assert_eq!(lam["phase"], 0.0);
    assert_eq!(lam["a"], 1.0);
    assert_eq!(lam["b"], 0.0);
    assert_eq!(lam["c"], 2.0);
    assert_eq!(lam["d"], 1.0);
    assert_eq!(v["point1"]["permeable"], true);
    assert_eq!(v["point2"]["lambda"], v["point1"]["lambda"]);

    let cfg = write_config(
        dir.path(),
        "free.json",
        r#"{"mass": 2, "separation": 1, "interaction": {"strengths": {
            "point1": {}, "point2": {}}}}"#,
    );
    let out = run(&["convert", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let lam = &v["point1"]["lambda"];
    assert_eq!((lam["a"].as_f64(), lam["d"].as_f64()), (Some(1.0), Some(1.0)));
    assert_eq!((lam["b"].as_f64(), lam["c"].as_f64()), (Some(0.0), Some(0.0)));
}

#[test]
fn convert_flags_decoupling_strengths() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "hard.json",
        r#"{"mass": 2, "separation": 1, "interaction": {"strengths": {
            "point1": {"scalar": 2}, "point2": {"scalar": 2}}}}"#,
    );
    let out = run(&["convert", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["point1"]["permeable"], false);
    assert!(v["point1"]["diagnostic"].is_string());
}

#[test]
fn figure_ids_outside_the_catalogue_are_rejected() {
    for id in ["0", "11"] {
        let out = run(&["figure", id]);
        assert_eq!(exit_code(&out), 2, "figure {id} should exit 2");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn missing_config_flag_is_a_usage_error() {
    let out = run(&["bound-states"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&["figure", "2", "--out", path.to_str().unwrap()]);
        assert_eq!(exit_code(&out), 0);
    }
    let bytes_a = std::fs::read(&a).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, std::fs::read(&b).unwrap());

    let cfg = write_config(
        dir.path(),
        "eq.json",
        r#"{"mass": 2, "separation": 1,
            "interaction": {"case": {"id": "even/equal-mixture", "strength": -1}}}"#,
    );
    let first = run(&["bound-states", "--config", cfg.to_str().unwrap()]);
    let second = run(&["bound-states", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn free_scattering_is_perfectly_transmitting() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "free.json",
        r#"{"mass": 2, "separation": 1, "interaction": {"lambda": {
            "point1": {"a": 1, "b": 0, "c": 0, "d": 1},
            "point2": {"a": 1, "b": 0, "c": 0, "d": 1}}},
            "scan": {"grid": 64}}"#,
    );
    let out = run(&["scatter", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&stdout_str(&out));
    assert_eq!(rows.len(), 64);
    for row in &rows {
        assert!((cell_f64(row, 7) - 1.0).abs() <= 1e-12, "transmission should stay at 1");
        assert!(cell_f64(row, 8).abs() <= 1e-12, "defect should vanish");
        assert!(cell_f64(row, 6) <= 1e-30, "reflection should vanish");
    }
}

#[test]
fn scatter_rows_conserve_flux() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "sc.json",
        r#"{"mass": 2, "separation": 1,
            "interaction": {"case": {"id": "even/scalar", "strength": 1.5}},
            "scan": {"grid": 400}}"#,
    );
    let out = run(&["scatter", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&stdout_str(&out));
    assert_eq!(rows.len(), 400);
    for row in &rows {
        assert!(cell_f64(row, 8).abs() <= 1e-12);
        let flux = cell_f64(row, 6) + cell_f64(row, 7);
        assert!((flux - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn transmission_peaks_align_with_the_resonance_poles() {
    let case = SpecialCaseId::parse("even/scalar").unwrap();
    let arr = instantiate(&case, 1.5, 2.0, 1.0).unwrap();
    let search = PoleSearch::default_for_mass(2.0).unwrap();
    let report = find_resonances(&arr, &search).unwrap();
    let in_window: Vec<_> =
        report.poles.iter().filter(|p| p.energy.re > 2.3 && p.energy.re < 11.9).collect();
    assert_eq!(in_window.len(), 4, "expected four poles over the scan window");

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "peaks.json",
        r#"{"mass": 2, "separation": 1,
            "interaction": {"case": {"id": "even/scalar", "strength": 1.5}},
            "scan": {"grid": 6000, "energy_min": 2.2, "energy_max": 12.0}}"#,
    );
    let out = run(&["scatter", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&stdout_str(&out));
    let samples: Vec<(f64, f64)> =
        rows.iter().map(|r| (cell_f64(r, 0), cell_f64(r, 7))).collect();
    let mut peaks = Vec::new();
    for w in samples.windows(3) {
        if w[1].1 > w[0].1 && w[1].1 >= w[2].1 {
            peaks.push(w[1].0);
        }
    }
    for pole in &in_window {
        let half_width = pole.width / 2.0;
        let hit = peaks.iter().any(|&p| (p - pole.energy.re).abs() <= half_width);
        assert!(
            hit,
            "no transmission peak within {half_width:.3e} of pole at {:.6}",
            pole.energy.re
        );
    }
}

#[test]
fn limit_classifies_collapsed_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "odd.json",
        r#"{"mass": 2, "separation": 1, "interaction": {"lambda": {
            "point1": {"a": 2, "b": 0, "c": 0, "d": 0.5},
            "point2": {"a": 2, "b": 0, "c": 0, "d": 0.5}}, "parity": "odd"}}"#,
    );
    let out = run(&["limit", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&stdout_str(&out));
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert_eq!(row[0], "odd");
    }
    assert_eq!(cell_f64(&rows[0], 2), 4.0);
    assert_eq!(cell_f64(&rows[3], 2), 0.25);

    let a = 1.36f64.sqrt();
    let body = format!(
        r#"{{"mass": 2, "separation": 1, "interaction": {{"lambda": {{
            "point1": {{"a": {a:.17e}, "b": 0.6, "c": 0.6, "d": {a:.17e}}},
            "point2": {{"a": {a:.17e}, "b": -0.6, "c": -0.6, "d": {a:.17e}}}}}, "parity": "odd"}}}}"#
    );
    let cfg = write_config(dir.path(), "gauge.json", &body);
    let out = run(&["limit", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&stdout_str(&out));
    for row in &rows {
        assert_eq!(row[0], "gauge-phase");
    }
    assert!((cell_f64(&rows[0], 2) - 1.0).abs() <= 1e-12, "e11 should collapse to 1");
    assert!(cell_f64(&rows[1], 2).abs() <= 1e-12, "e12 should vanish");
}

#[test]
fn figure_anchor_rows_are_exact() {
    let out = run(&["figure", "1"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    assert!(text.contains("marker,critical,-2.5000000000000000e-1,2.0000000000000000e0"));
    assert!(text.contains("marker,critical,0.0000000000000000e0,2.0000000000000000e0"));

    let out = run(&["figure", "4"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    for b in [-2.0 * (2.0 - 3f64.sqrt()), -2.0 * (2.0 + 3f64.sqrt()), 0.0] {
        let line = format!("marker,supercritical,{:.16e},-2.0000000000000000e0", b);
        assert!(text.contains(&line), "figure 4 should contain {line}");
    }
}

#[test]
fn nonrel_check_reports_small_deviations_for_heavy_mass() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "nr.json",
        r#"{"mass": 50, "separation": 1,
            "interaction": {"case": {"id": "even/equal-mixture", "strength": -0.05}}}"#,
    );
    let out = run(&["nonrel-check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let rows = csv_rows(&stdout_str(&out));
    assert_eq!(rows.len(), 2);
    for row in &rows {
        let dev = cell_f64(row, 3);
        assert!(dev > 1e-4 && dev < 0.01, "deviation {dev} outside expected band");
    }
}

#[test]
fn unresolvable_doublets_map_to_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "wide.json",
        r#"{"mass": 2, "separation": 30,
            "interaction": {"case": {"id": "even/equal-mixture", "strength": -1}}}"#,
    );
    let out = run(&["bound-states", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 3);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("grid"), "stderr should name the grid failure: {err}");
}

#[test]
fn json_format_mirrors_the_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "eq.json",
        r#"{"mass": 2, "separation": 1,
            "interaction": {"case": {"id": "even/equal-mixture", "strength": -1}}}"#,
    );
    let csv = run(&["bound-states", "--config", cfg.to_str().unwrap()]);
    let json = run(&["bound-states", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(exit_code(&csv), 0);
    assert_eq!(exit_code(&json), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&json)).unwrap();
    let columns: Vec<&str> =
        v["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(columns, ["kind", "energy", "residual", "detected"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), csv_rows(&stdout_str(&csv)).len());
    assert_eq!(v["status"], "complete");
}

#[test]
fn out_flag_overrides_the_config_path() {
    let dir = tempfile::tempdir().unwrap();
    let config_target = dir.path().join("from_config.csv");
    let flag_target = dir.path().join("from_flag.csv");
    let body = format!(
        r#"{{"mass": 2, "separation": 1,
            "interaction": {{"case": {{"id": "even/equal-mixture", "strength": -1}}}},
            "output": {{"path": {:?}}}}}"#,
        config_target.to_str().unwrap()
    );
    let cfg = write_config(dir.path(), "out.json", &body);
    let out = run(&[
        "bound-states",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        flag_target.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(flag_target.exists());
    assert!(!config_target.exists());

    let out = run(&["bound-states", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(config_target.exists());
}

#[test]
fn zero_separation_is_accepted_only_where_it_is_meaningful() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "zero.json",
        r#"{"mass": 2, "separation": 0,
            "interaction": {"case": {"id": "even/equal-mixture", "strength": -1}}}"#,
    );
    let out = run(&["bound-states", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["convert", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let out = run(&["limit", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
}
