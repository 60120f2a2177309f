//! Command-line behaviour: exit codes, config parsing, output formats and
//! reproducibility.

use std::path::Path;
use std::process::{Command, Output};

use jcmnet::cli::{run, CommandKind, JobConfig, Outcome, OutputFormat, OUT_DIR_ENV};
use jcmnet::ratpoly::TwoVarPoly;
use jcmnet::Window;

fn jcmnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jcmnet"))
        .args(args)
        .env_remove(OUT_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn violation_exits_with_two() {
    let o = jcmnet(&[
        "check-jcm",
        "--b-roots",
        "9,9,9",
        "--a-roots",
        "1",
        "--window",
        "2x2",
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stdout(&o).contains("violation"));
}

#[test]
fn clean_run_exits_with_zero() {
    let o = jcmnet(&[
        "check-jcm",
        "--b-roots",
        "1,3",
        "--a-roots",
        "2",
        "--window",
        "10x10",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("no violation up to window"));
}

#[test]
fn malformed_rational_exits_with_one() {
    let o = jcmnet(&["check-jcm", "--b-roots", "1/0", "--a-roots", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("1/0"), "{}", stderr(&o));
}

#[test]
fn missing_subcommand_exits_with_one() {
    let o = jcmnet(&[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_config_field_reports_position() {
    let text = "{\n  \"command\": \"check-jcm\",\n  \"colour\": 3\n}";
    let err = JobConfig::from_json(text).unwrap_err().to_string();
    assert!(err.contains("colour"), "{err}");
    assert!(err.contains("line 3"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    std::fs::write(&path, text).unwrap();
    let o = jcmnet(&["--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("column"), "{}", stderr(&o));
}

#[test]
fn config_round_trips_and_runs() {
    let config = JobConfig {
        polynomial: Some(TwoVarPoly::monic_int(&[9, 9, 9], &[1])),
        window: Some(Window::new(2, 2).unwrap()),
        output: OutputFormat::Json,
        ..JobConfig::new(CommandKind::CheckJcm)
    };
    let text = config.to_json().unwrap();
    assert_eq!(JobConfig::from_json(&text).unwrap(), config);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    std::fs::write(&path, &text).unwrap();
    let o = jcmnet(&["--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["verdict"], "violation");
    assert_eq!(cert["violation_count"], 6);
}

#[test]
fn config_accepts_integer_and_fraction_strings() {
    let text = r#"{"command": "scan-family", "family": 2, "from": 8, "to": "9", "step": "1/2",
                   "output": "json"}"#;
    let config = JobConfig::from_json(text).unwrap();
    let mut buf = Vec::new();
    assert_eq!(run(&config, &mut buf).unwrap(), Outcome::Clean);
    let rows: serde_json::Value = serde_json::from_slice(&buf).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
}

#[test]
fn csv_outputs_have_headers() {
    let o = jcmnet(&[
        "scan-family",
        "--family",
        "1",
        "--from",
        "4",
        "--to",
        "6",
        "--step",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("b,condition_value_sign,window_verdict"));
    assert_eq!(lines.count(), 3);

    let o = jcmnet(&[
        "check-jcm",
        "--b-roots",
        "9,9,9",
        "--a-roots",
        "1",
        "--window",
        "2x2",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("alpha_m,alpha_n,beta_m,beta_n,value\n"));
    assert!(text.contains("0,1,1,1,-15313/134209012260"));
}

#[test]
fn every_subcommand_runs() {
    let poly = ["--b-roots", "1,3", "--a-roots", "2"];
    for (cmd, extra) in [
        ("criteria", &[][..]),
        ("decompose", &[][..]),
        ("verify-moments", &["--window", "3x1"][..]),
        ("shift-report", &["--length", "50"][..]),
    ] {
        let mut args = vec![cmd];
        args.extend_from_slice(&poly);
        args.extend_from_slice(extra);
        let o = jcmnet(&args);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stderr(&o));
        assert!(!stdout(&o).is_empty());
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = jcmnet(&[
        "decompose",
        "--poly",
        r#"{"b": {"lead": "1", "roots": ["1", "3"]}, "a": {"lead": "1", "roots": ["2"]}}"#,
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let pf: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(pf["c"], "2");
    assert_eq!(pf["residues"][0]["value"], "-1");
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, String)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read_to_string(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn reproduce_is_deterministic_and_honours_env_dir() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_jcmnet"))
        .args(["reproduce", "--seed", "7"])
        .env(OUT_DIR_ENV, first.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let o = jcmnet(&[
        "reproduce",
        "--seed",
        "7",
        "--outdir",
        second.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));

    let a = read_dir_sorted(first.path());
    let b = read_dir_sorted(second.path());
    assert_eq!(a, b);
    assert!(a.iter().any(|(name, _)| name == "summary.csv"));
    assert_eq!(a.len(), 8);
}

#[test]
fn usage_errors_exit_with_one_and_help_with_zero() {
    let o = jcmnet(&["check-jcm", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(1));
    let o = jcmnet(&["check-jcm", "--b-roots", "1", "--window", "3y3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = jcmnet(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("CSV columns"));
}
