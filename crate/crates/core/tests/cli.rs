//! Black-box tests of the command-line binary: output shapes, exit
//! codes and config-file override behaviour.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gini-distortion"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn eval_eta_exponential() {
    let out = run(&[
        "eval", "--dist", "exp(1)", "--distortion", "ph", "--alpha", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("8.33333333e-1"), "{text}");
    assert!(text.contains("converged = true"), "{text}");
}

#[test]
fn eval_nu_needs_copula() {
    let out = run(&[
        "eval", "--dist", "exp(1)", "--distortion", "ph", "--alpha", "2", "--measure", "nu",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_nu_with_copula() {
    let out = run(&[
        "eval", "--dist", "exp(1)", "--distortion", "ph", "--copula", "fgm", "--theta", "1",
        "--alpha", "2", "--measure", "nu",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("7.33333333e-1"), "{}", stdout(&out));
}

#[test]
fn unknown_distribution_exits_2() {
    let out = run(&["eval", "--dist", "cauchy(0)", "--distortion", "ph", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn alpha_outside_family_interval_exits_2() {
    let out = run(&["eval", "--dist", "exp(1)", "--distortion", "ph", "--alpha=-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_csv_header_single_variable() {
    let out = run(&[
        "scan", "--dist", "uniform(0,1)", "--distortion", "prh", "--alpha-range", "0.5:1.5:0.5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "alpha,value,err_estimate,converged");
    assert_eq!(lines.count(), 3);
}

#[test]
fn scan_csv_header_surface() {
    let out = run(&[
        "scan", "--dist", "exp(1)", "--distortion", "ph", "--copula", "fgm",
        "--alpha-range", "1:2:1", "--theta-range=-1:1:1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta,alpha,value,err_estimate,converged"
    );
    assert_eq!(lines.count(), 6);
}

#[test]
fn extrema_finds_exponential_minimum() {
    let out = run(&[
        "extrema", "--dist", "exp(1)", "--distortion", "ph", "--window", "1:5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("kind = minimum"), "{text}");
    assert!(text.contains("alpha_star = 2.414213"), "{text}");
}

#[test]
fn extrema_window_outside_interval_exits_2() {
    let out = run(&[
        "extrema", "--dist", "exp(1)", "--distortion", "ph", "--window=-3:-1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_single_and_all() {
    let out = run(&[
        "check", "T3.1", "--dist", "exp(1)", "--distortion", "ph", "--alpha", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("T3.1"), "{text}");
    assert!(text.contains("conclusion_verified: holds"), "{text}");

    let out = run(&[
        "check", "all", "--dist", "exp(1)", "--distortion", "ph", "--copula", "fgm",
        "--theta", "1", "--alpha", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for id in ["T3.1", "T3.2", "T3.3", "T4.1", "T4.2", "T4.3", "T4.4", "A2.3", "A2.4"] {
        assert!(text.contains(id), "missing {id} in:\n{text}");
    }
}

#[test]
fn check_unknown_id_exits_2() {
    let out = run(&["check", "T9.9", "--dist", "exp(1)", "--distortion", "ph"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mc_runs_and_small_n_rejected() {
    let out = run(&[
        "mc", "--dist", "exp(1)", "--distortion", "ph", "--alpha", "1", "--n", "50000",
        "--seed", "7",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("std_error"), "{text}");
    assert!(text.contains("seed = 7"), "{text}");

    let out = run(&[
        "mc", "--dist", "exp(1)", "--distortion", "ph", "--alpha", "1", "--n", "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_overrides_flags() {
    let dir = tmp_dir("config");
    let path = dir.join("model.conf");
    std::fs::write(&path, "dist = uniform(0,1)\nalpha = 1\n").unwrap();

    // the flag says exp(1)/alpha 2; the file must win on both keys
    let out = bin()
        .args(["eval", "--dist", "exp(1)", "--distortion", "ph", "--alpha", "2", "--config"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("uniform(0,1)"), "{text}");
    assert!(text.contains("3.33333333e-1"), "{text}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_config_file_exits_2() {
    let dir = tmp_dir("badconfig");
    let path = dir.join("bad.conf");
    std::fs::write(&path, "dist exp(1)\n").unwrap();
    let out = bin()
        .args(["eval", "--distortion", "ph", "--alpha", "1", "--config"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn figures_writes_all_artifacts() {
    let dir = tmp_dir("figures");
    let out = bin().args(["figures", "--out-dir"]).arg(&dir).output().unwrap();
    assert!(out.status.success());
    for name in ["fig1.csv", "fig1.svg", "fig2.csv", "fig2.svg", "fig3.csv", "fig3.svg"] {
        assert!(dir.join(name).exists(), "{name} missing");
    }
    let fig2 = std::fs::read_to_string(dir.join("fig2.csv")).unwrap();
    assert!(fig2.starts_with("panel,alpha,value,err_estimate,converged\n"));
    std::fs::remove_dir_all(&dir).ok();
}
