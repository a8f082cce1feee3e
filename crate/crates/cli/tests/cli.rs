use std::path::Path;
use std::process::{Command, Output};

use qwalk_cli::bundled::bundled;
use qwalk_cli::Report;

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk")).args(args).env_remove("QWALK_TOL").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn corrupted_k3() -> String {
    bundled("k3_loops").unwrap().replace(
        "\"1->1\": [0.5773502691896258, 0, 0, 0]",
        "\"1->1\": [0.9, 0, 0, 0]",
    )
}

#[test]
fn spectrum_of_k3_matches_output_and_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = qwalk(&["spectrum", "k3_loops", "--oracle", "--eigenvectors", "--output", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("-0.333333+0.942809i"));
    assert!(text.contains("(x + 1)(x^2 + 0.666667x + 1)(x^2 - 1.33333x + 1)"));
    assert!(text.contains("oracle: direct diagonalization agrees"));

    let json = std::fs::read_to_string(&out).unwrap();
    let report = Report::from_json(&json).unwrap();
    assert_eq!(report.to_json(), json);
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    assert_eq!(report.tool, "qwalk");
    assert_eq!(report.instances[0].sha256.len(), 64);
    assert!(report.pass);
    assert_eq!(report.instances[0].eigenvectors.len(), 3);
}

#[test]
fn malformed_weight_is_an_input_error_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad = bundled("k3_loops").unwrap().replace("[0, 0, 0, 0.5773502691896258]", "[0, 0, 0.5773502691896258]");
    let path = write(dir.path(), "bad.json", &bad);
    let o = qwalk(&["spectrum", &path]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("weights.\"2->0\""), "{err}");
    assert!(err.contains("4 components"), "{err}");
}

#[test]
fn syntax_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", "{\n  \"graph\": {\n    \"n\": 3,,\n");
    let o = qwalk(&["verify", &path]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn missing_instance_is_an_input_error() {
    let o = qwalk(&["spectrum", "no_such_instance"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("k3_loops"));
}

#[test]
fn corrupted_weight_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "corrupt.json", &corrupted_k3());
    let o = qwalk(&["verify", &path]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("unitarity condition fails at vertex 1"), "{text}");
}

#[test]
fn spectrum_refuses_non_unitary_unless_forced() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "corrupt.json", &corrupted_k3());
    let o = qwalk(&["spectrum", &path]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("vertex 1"));
    assert!(!stdout(&o).contains("forced"));
    let o = qwalk(&["spectrum", &path, "--force"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("forced: right spectrum of U from direct diagonalization only"));
}

#[test]
fn lift_with_approximate_mu() {
    let o = qwalk(&["lift", "k3_loops", "--mu", "-0.6667"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("2 of 2, H-independent"));
}

#[test]
fn lift_outside_spectrum_lists_available_values() {
    let o = qwalk(&["lift", "k3_loops", "--mu", "0.5"]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("-0.666667") && err.contains("1.333333"), "{err}");
}

#[test]
fn lift_all_includes_minus_one() {
    let o = qwalk(&["lift", "k3_loops", "--all"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("eigenvectors for lambda = -1 (kernel of U - lambda I): 3 of 3, H-independent"), "{text}");
    assert!(text.contains("4 of 4, H-independent"));
}

#[test]
fn lift_needs_a_target() {
    assert_eq!(code(&qwalk(&["lift", "k3_loops"])), 2);
}

#[test]
fn examples_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o1 = qwalk(&["examples", "--output", a.to_str().unwrap()]);
    let o2 = qwalk(&["examples", "--output", b.to_str().unwrap()]);
    assert_eq!(code(&o1), 0, "{}", stdout(&o1));
    assert_eq!(o1.stdout, o2.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(stdout(&o1).contains("golden checks match"));
}

#[test]
fn random_verification_batch() {
    let o = qwalk(&["verify", "--random", "K4", "--seed", "7", "--count", "50"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("50/50 instances pass"));
}

#[test]
fn tolerance_flag_beats_environment() {
    let strict = Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(["verify", "k3_loops"])
        .env("QWALK_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(code(&strict), 1);
    let relaxed = Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(["verify", "k3_loops", "--tol", "1e-8"])
        .env("QWALK_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(code(&relaxed), 0);
    assert_eq!(code(&qwalk(&["verify", "k3_loops", "--tol", "-1"])), 2);
}

#[test]
fn generated_instances_load_and_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.json");
    let o = qwalk(&["generate", "--random", "C5", "--seed", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(qwalk(&["generate", "--random", "C5", "--seed", "3"]).stdout, o.stdout);
    let s = qwalk(&["spectrum", path.to_str().unwrap(), "--oracle"]);
    assert_eq!(code(&s), 0, "{}", stdout(&s));
    let dump = qwalk(&["generate", "star_loop"]);
    assert_eq!(stdout(&dump), bundled("star_loop").unwrap());
}

#[test]
fn every_bundled_instance_verifies() {
    for name in qwalk_cli::bundled::names() {
        let o = qwalk(&["verify", name]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
        let o = qwalk(&["spectrum", name, "--oracle", "--eigenvectors"]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}
