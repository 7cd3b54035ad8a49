//! End-to-end runs of the `aurea` binary: exit codes, flag/config precedence,
//! and artifact files.

use std::path::Path;
use std::process::{Command, Output};

fn aurea(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aurea"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "expected exit {code}, stderr: {}",
        stderr(out)
    );
}

#[test]
fn fib_table_on_stdout() {
    let out = aurea(&["fib", "--n", "10"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,fib,ratio");
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[1], "0,0,");
    assert!(lines[11].starts_with("10,55,1.618"));
}

#[test]
fn fib_modular_column_and_period_note() {
    let out = aurea(&["fib", "--n", "6", "--lucas", "--mod", "10"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.starts_with("n,fib,lucas,mod10,ratio\n"));
    assert!(text.contains("6,8,18,8,"));
    assert!(stderr(&out).contains("pisano_period(10) = 60"));
}

#[test]
fn config_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"n": 12, "lucas": true}"#).unwrap();
    let cfg = cfg.to_str().unwrap();

    let out = aurea(&["fib", "--config", cfg]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.starts_with("n,fib,lucas,ratio\n"));
    assert_eq!(text.lines().count(), 14); // header + 0..=12

    let out = aurea(&["fib", "--config", cfg, "--n", "5"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out).lines().count(), 7);
}

#[test]
fn config_must_be_a_json_object() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, "[1, 2, 3]").unwrap();
    let out = aurea(&["fib", "--config", cfg.to_str().unwrap()]);
    assert_exit(&out, 2);
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn missing_config_file_is_io_error() {
    let out = aurea(&["fib", "--config", "/nonexistent/cfg.json"]);
    assert_exit(&out, 3);
}

#[test]
fn missing_input_file_is_io_error() {
    let out = aurea(&["decay-fit", "--input", "/nonexistent/samples.csv"]);
    assert_exit(&out, 3);
}

#[test]
fn malformed_input_is_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bad.csv");
    std::fs::write(&csv, "x,intensity\n1.0,not-a-number\n").unwrap();
    let out = aurea(&["decay-fit", "--input", csv.to_str().unwrap()]);
    assert_exit(&out, 2);
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = aurea(&["frobnicate"]);
    assert_exit(&out, 2);
}

#[test]
fn pgm_without_grid_is_validation_error() {
    let out = aurea(&["ifs", "--pgm", "/tmp/never-written.pgm"]);
    assert_exit(&out, 2);
    assert!(!Path::new("/tmp/never-written.pgm").exists());
}

#[test]
fn out_of_domain_argument_is_validation_error() {
    let out = aurea(&["tiling", "--squares", "0"]);
    assert_exit(&out, 2);
}

#[test]
fn layout_writes_svg_and_json_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let json = dir.path().join("out.json");
    let out = aurea(&[
        "layout",
        "--squares",
        "5",
        "--svg",
        svg.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);

    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["canvas"], serde_json::json!([5.0, 8.0]));

    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<?xml"));
    assert!(svg_text.contains("<svg"));

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(doc["layers"].as_array().unwrap().len() >= 3);
}

#[test]
fn word_prints_the_fibonacci_word() {
    let out = aurea(&["word", "--iters", "5"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out).trim(), "abaababaabaab");
    assert!(stderr(&out).contains("a:b = 8:5"));
}

#[test]
fn word_chain_csv_uses_lowercase_letters() {
    let out = aurea(&["word", "--iters", "3", "--chain"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,type,left_endpoint");
    assert_eq!(lines[1], "0,a,0");
    assert_eq!(lines.len(), 6); // header + F(5) tiles
    for line in &lines[1..] {
        let kind = line.split(',').nth(1).unwrap();
        assert!(kind == "a" || kind == "b", "unexpected tile type {kind}");
    }
}

#[test]
fn spacing_reports_score() {
    let out = aurea(&["spacing", "--coords", "0,1,2,4,7,12"]);
    assert_exit(&out, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["points"], serde_json::json!(6));
    assert!(report["score"].as_f64().unwrap() >= 0.0);
}

#[test]
fn ifs_moran_only_run() {
    let out = aurea(&["ifs", "--moran", "0.5,0.5,0.5"]);
    assert_exit(&out, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let d = report["dimension"].as_f64().unwrap();
    assert!((d - 3.0f64.ln() / 2.0f64.ln()).abs() < 1e-10);
}

#[test]
fn scene_renders_svg_and_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("scene.svg");
    let pgm = dir.path().join("scene.pgm");
    let spec = Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/scene-demo.json");
    let out = aurea(&[
        "scene",
        "--spec",
        spec.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--pgm",
        pgm.to_str().unwrap(),
        "--grid",
        "16",
    ]);
    assert_exit(&out, 0);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<circle"));
    let bytes = std::fs::read(&pgm).unwrap();
    assert!(bytes.starts_with(b"P5\n16 16\n65535\n"));
    assert_eq!(bytes.len(), "P5\n16 16\n65535\n".len() + 2 * 16 * 16);
}

#[test]
fn frame_erasure_report_from_scene_atoms() {
    let spec = Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/atoms-demo.json");
    let out = aurea(&[
        "frame",
        "--scene",
        spec.to_str().unwrap(),
        "--grid",
        "16",
        "--erase",
        "1",
    ]);
    assert_exit(&out, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["atoms"], serde_json::json!(5));
    assert_eq!(report["labels"][0], serde_json::json!("disk-0"));
    assert_eq!(report["erasure"]["survivors"], serde_json::json!(4));
}

#[test]
fn cubist_report_normalizes_weights() {
    let views = Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/views-4cube.json");
    let out = aurea(&["cubist", "--views", views.to_str().unwrap()]);
    assert_exit(&out, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["vertices"], serde_json::json!(16));
    assert_eq!(report["edges"], serde_json::json!(32));
    let weights: Vec<f64> = report["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_f64().unwrap())
        .collect();
    assert!((weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let run = || {
        let out = aurea(&["layout", "--squares", "6"]);
        assert_exit(&out, 0);
        out.stdout
    };
    assert_eq!(run(), run());
}
