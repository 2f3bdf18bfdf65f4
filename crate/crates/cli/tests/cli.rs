use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn revnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revnf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn golden_z2_one_two_passes() {
    let out = revnf(&["golden", "--case", "z2", "--n1", "1", "--n2", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["pass"], true);
    assert!(doc["type"].is_null());
    let degrees = doc["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 6);
}

#[test]
fn golden_z2xz2_type_d() {
    let out = revnf(&[
        "golden", "--case", "z2xz2", "--n1", "1", "--n2", "2", "--signs", "-1,-1,-1", "--k-to", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["type"], "D");
}

#[test]
fn verify_elphick_through_degree_six() {
    let out = revnf(&["verify", "--case", "elphick", "--spec", "resonant-1-2", "--k-to", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["suites"][0]["lines"].as_array().unwrap().len(), 5);
}

#[test]
fn complement_with_trivial_group() {
    let out = revnf(&["complement", "--spec", "nilpotent", "--k-to", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    for d in doc["degrees"].as_array().unwrap() {
        assert_eq!(d["dim"], 2);
    }
}

#[test]
fn unknown_case_and_flag_are_usage_errors() {
    let out = revnf(&["verify", "--spec", "nilpotent", "--case", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("possible values"));
    let out = revnf(&["complement", "--spec", "nilpotent", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn errors_produce_an_error_document() {
    let out = revnf(&["golden", "--case", "z2", "--n1", "2", "--n2", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(doc["kind"], "error");
    assert!(doc["failures"][0]["error"].as_str().unwrap().contains("lowest terms"));
}

#[test]
fn bad_document_reports_its_location() {
    let mut file = tempfile();
    writeln!(file.1, "dimension = 2\ndegree_max = [").unwrap();
    let out = revnf(&["complement", "--spec", file.0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(doc["failures"][0]["error"].as_str().unwrap().contains("line"));
    std::fs::remove_file(&file.0).unwrap();
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    let path = std::env::temp_dir().join(format!("revnf-cli-{}.toml", std::process::id()));
    let file = std::fs::File::create(&path).unwrap();
    (path, file)
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = ["verify", "--spec", "resonant-1-1", "--k-to", "4", "--samples", "40"];
    let one = revnf(&[&["--jobs", "1"][..], &args[..]].concat());
    let four = revnf(&[&["--jobs", "4"][..], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let c1 = revnf(&["--jobs", "1", "complement", "--spec", "resonant-1-2", "--k-to", "4"]);
    let c4 = revnf(&["--jobs", "4", "complement", "--spec", "resonant-1-2", "--k-to", "4"]);
    assert_eq!(c1.stdout, c4.stdout);
}

#[test]
fn linear_field_is_already_normal() {
    let out = revnf(&["normal-form", "--spec", "resonant-1-1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    for step in doc["steps"].as_array().unwrap() {
        assert!(step["g_k"].as_array().unwrap().is_empty());
        assert!(step["xi_k"].as_array().unwrap().is_empty());
    }
}

#[test]
fn latex_complement() {
    let out = revnf(&[
        "complement", "--spec", "resonant-1-1", "--k-from", "2", "--k-to", "2", "--out", "latex",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("% degree 2, dimension 8"));
    assert!(text.contains(r"x_{3}^{2} + x_{4}^{2}"));
}

#[test]
fn hilbert_for_builtin() {
    let out = revnf(&["hilbert", "--spec", "resonant-1-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
}
