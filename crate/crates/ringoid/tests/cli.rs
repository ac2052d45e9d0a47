//! End-to-end checks of the command line front end: exit codes, report
//! determinism, and the conversion pipeline, driven through the compiled
//! binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ringoid"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("ringoid-cli-{}-{name}", std::process::id()))
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("reports are utf-8")
}

#[test]
fn validate_passes_on_the_bundled_quasi_ideal() {
    let output = bin()
        .args(["validate"])
        .arg(data("quasi_z4_double.json"))
        .output()
        .expect("binary runs");
    let report = stdout_of(&output);
    assert_eq!(output.status.code(), Some(0), "report:\n{report}");
    assert!(report.contains("kind quasi-ideal"));
    assert!(report.contains("result pass"));
}

#[test]
fn pi_reports_the_homotopy_sizes() {
    let output = bin()
        .args(["pi"])
        .arg(data("quasi_z4_double.json"))
        .output()
        .expect("binary runs");
    let report = stdout_of(&output);
    assert_eq!(output.status.code(), Some(0));
    assert!(report.contains("pi0 size=2"), "report:\n{report}");
    assert!(report.contains("pi1 size=2"), "report:\n{report}");
}

#[test]
fn classification_of_the_bundled_identity_graph_is_an_anamorphism() {
    let output = bin()
        .args(["classify"])
        .arg(data("corr_z4_identity_graph.json"))
        .output()
        .expect("binary runs");
    let report = stdout_of(&output);
    assert_eq!(output.status.code(), Some(0));
    assert!(report.contains("class anamorphism"), "report:\n{report}");
}

#[test]
fn malformed_input_exits_with_code_2() {
    let path = temp("garbage.json");
    fs::write(&path, "{ not json").unwrap();
    let output = bin().args(["validate"]).arg(&path).output().expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    assert!(stdout_of(&output).contains("result fail"));
    fs::remove_file(&path).ok();
}

#[test]
fn law_violations_exit_with_code_1_and_a_witness() {
    let path = temp("lawless-ring.json");
    fs::write(
        &path,
        r#"{"size":2,"add":[[0,1],[1,0]],"mul":[[1,1],[1,1]],"one":1}"#,
    )
    .unwrap();
    let output = bin().args(["validate"]).arg(&path).output().expect("binary runs");
    let report = stdout_of(&output);
    assert_eq!(output.status.code(), Some(1), "report:\n{report}");
    assert!(report.contains("violation"), "report:\n{report}");
    assert!(report.contains("result fail"));
    fs::remove_file(&path).ok();
}

#[test]
fn exhausted_budgets_exit_with_code_3() {
    let output = bin()
        .args(["adm", "--budget", "1,10"])
        .arg(data("corr_z4_identity_graph.json"))
        .output()
        .expect("binary runs");
    let report = stdout_of(&output);
    assert_eq!(output.status.code(), Some(3), "report:\n{report}");
    assert!(report.contains("budget exceeded"));
}

#[test]
fn single_law_suites_are_deterministic() {
    let run = || {
        bin()
            .args(["laws", "--suite", "quasi", "--seed", "0"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "law reports must not drift");
    let report = stdout_of(&first);
    assert!(report.contains("check leibniz-equivalence pass instances=200"));
}

#[test]
fn different_seeds_change_the_corpus_but_not_the_laws() {
    let output = bin()
        .args(["laws", "--suite", "quasi", "--seed", "7"])
        .output()
        .expect("binary runs");
    let report = stdout_of(&output);
    assert_eq!(output.status.code(), Some(0), "report:\n{report}");
    assert!(report.contains("seed 7"));
    assert!(report.contains("suite quasi result pass"));
}

#[test]
fn conversion_roundtrips_through_the_simplicial_side() {
    let simp = temp("z4-simplicial.json");
    let back = temp("z4-roundtrip.json");
    let first = bin()
        .args(["convert"])
        .arg(data("quasi_z4_double.json"))
        .args(["--out"])
        .arg(&simp)
        .output()
        .expect("binary runs");
    assert_eq!(first.status.code(), Some(0));
    let second = bin()
        .args(["convert"])
        .arg(&simp)
        .args(["--out"])
        .arg(&back)
        .output()
        .expect("binary runs");
    assert_eq!(second.status.code(), Some(0));
    let original: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(data("quasi_z4_double.json")).unwrap()).unwrap();
    let rebuilt: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&back).unwrap()).unwrap();
    assert_eq!(original, rebuilt);
    fs::remove_file(&simp).ok();
    fs::remove_file(&back).ok();
}

#[test]
fn the_admissibilization_pipeline_reaches_a_butterfly() {
    let adm = temp("z4-adm.json");
    let bfly = temp("z4-butterfly.json");
    let step1 = bin()
        .args(["adm"])
        .arg(data("corr_z4_identity_graph.json"))
        .args(["--out"])
        .arg(&adm)
        .output()
        .expect("binary runs");
    assert_eq!(step1.status.code(), Some(0), "{}", stdout_of(&step1));
    assert!(stdout_of(&step1).contains("class admissible"));
    let step2 = bin()
        .args(["butterfly"])
        .arg(&adm)
        .args(["--out"])
        .arg(&bfly)
        .output()
        .expect("binary runs");
    assert_eq!(step2.status.code(), Some(0), "{}", stdout_of(&step2));
    let step3 = bin().args(["validate"]).arg(&bfly).output().expect("binary runs");
    let report = stdout_of(&step3);
    assert_eq!(step3.status.code(), Some(0), "report:\n{report}");
    assert!(report.contains("kind butterfly"));
    fs::remove_file(&adm).ok();
    fs::remove_file(&bfly).ok();
}
