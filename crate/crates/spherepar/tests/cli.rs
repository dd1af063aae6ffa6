//! End-to-end tests of the `spherepar` binary: exit codes, JSON-to-stdout
//! contract, point-file handling, and the budget refusal path.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spherepar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spherepar"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

#[test]
fn verify_emits_json_and_exits_zero() {
    let out = run(&[
        "verify", "--frame", "P", "--m", "2", "--n", "3", "--samples", "20",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.trim_start().starts_with('{'));
    assert!(stdout.contains("\"command\": \"verify\""));
    assert!(stdout.contains("\"paper_tag\": \"genbracket\""));
    assert!(stdout.contains("\"summary\""));
}

#[test]
fn verify_json_is_byte_identical_across_processes() {
    let args = [
        "verify", "--frame", "B", "--m", "3", "--n", "1", "--samples", "50", "--symbolic",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parity_violation_is_a_usage_error() {
    let out = run(&["verify", "--frame", "B", "--n", "2", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("odd"), "{stderr}");

    let out = run(&["verify", "--frame", "P", "--m", "2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_refusal_uses_its_own_exit_code() {
    let out = run_with_env(
        &[
            "verify", "--frame", "P", "--m", "2", "--n", "3", "--samples", "5", "--symbolic",
        ],
        "SPHEREPAR_BUDGET",
        "3",
    );
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("budget"), "{stderr}");

    // raising the budget back makes the same run pass
    let out = run_with_env(
        &[
            "verify", "--frame", "P", "--m", "2", "--n", "3", "--samples", "5", "--symbolic",
        ],
        "SPHEREPAR_BUDGET",
        "12",
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn out_flag_writes_json_file_and_prints_text() {
    let dir = std::env::temp_dir().join("spherepar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "verify",
        "--frame",
        "P",
        "--m",
        "1",
        "--n",
        "1",
        "--samples",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("config:"));
    let json = std::fs::read_to_string(&path).unwrap();
    assert!(json.starts_with("{\"config\""));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn degenerate_m1_n1_run_is_valid() {
    let out = run(&[
        "verify", "--frame", "P", "--m", "1", "--n", "1", "--samples", "25", "--symbolic",
        "--text",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("frame_orthonormal"));
}

#[test]
fn eval_inline_point_and_bracket() {
    let out = run(&[
        "eval", "--frame", "B", "--m", "2", "--n", "1", "--point", "1 0 0 1 0", "--bracket",
        "1", "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("frame B_S1"));
    assert!(stdout.contains("bracket (1, 2)"));
}

#[test]
fn eval_rejects_non_unit_and_malformed_points() {
    let out = run(&[
        "eval", "--frame", "B", "--m", "2", "--n", "1", "--point", "1 1 0 1 0",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");

    let dir = std::env::temp_dir().join("spherepar-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_point.txt");
    std::fs::write(&path, "1 0 0\nnot-a-number 0\n").unwrap();
    let out = run(&[
        "eval",
        "--frame",
        "B",
        "--m",
        "2",
        "--n",
        "1",
        "--point-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 2"), "{stderr}");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn embed_reports_rank_and_roundtrip() {
    let out = run(&["embed", "--dims", "2,3", "--samples", "25"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"dims\": [2, 3]"));
    assert!(stdout.contains("immersion_rank"));

    let out = run(&["embed", "--dims", "1", "--samples", "5", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("no recursion levels"));
}
