//! End-to-end tests of the mkcs binary: golden outputs, exit codes,
//! determinism, and file emission.

use std::path::Path;
use std::process::{Command, Output};

fn mkcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mkcs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn mkcs_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mkcs"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

/// Report bytes with the volatile timestamp line removed.
fn stable(text: &str) -> String {
    text.lines()
        .filter(|l| !l.contains("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn write_matrix(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("fixture written");
    path.display().to_string()
}

#[test]
fn lemma2_example_passes_with_expected_maximum() {
    let out = mkcs(&["census", "lemma2", "--n", "3", "--B", "1"]);
    assert!(out.status.success(), "exit: {:?}", out.status);
    let text = stdout(&out);
    assert!(text.contains("\"max_annihilators\": 4"));
    assert!(text.contains("\"bound\": 4"));
    assert!(text.contains("\"bound_attained\": true"));
    assert!(text.contains("\"subcommand\": \"census lemma2\""));
}

#[test]
fn walsh_gen_emits_sequency_ordered_sign_matrix() {
    let out = mkcs(&["walsh", "gen", "--k", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "4 4 sign\n1 1 1 1\n1 1 -1 -1\n1 -1 -1 1\n1 -1 1 -1\n"
    );
}

#[test]
fn recover_zero_system_returns_zero_vector() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_matrix(dir.path(), "zero2x3.txt", "2 3 binary\n0 0 0\n0 0 0\n");
    let out = mkcs(&["recover", "--matrix", &matrix, "--y", "0 0", "--lmax", "8"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        report["report"]["found"]["xhat"],
        serde_json::json!([0, 0, 0])
    );
    assert_eq!(report["report"]["found"]["kd_bits"], serde_json::json!(3));
}

#[test]
fn kd_reports_glyph_and_fails_when_budget_too_small() {
    let out = mkcs(&["kd", "--n", "3", "--x", "1 1 1", "--lmax", "8"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["report"]["found"]["kd_bits"], serde_json::json!(6));
    assert_eq!(
        report["report"]["found"]["program"],
        serde_json::json!("(const 1)")
    );

    // Nothing nonzero fits in 5 bits at n = 3: exit 1, valid empty report.
    let out = mkcs(&["kd", "--n", "3", "--x", "1 1 1", "--lmax", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["report"]["found"], serde_json::Value::Null);
}

#[test]
fn guard_violations_exit_two_with_diagnostic() {
    let out = mkcs(&["census", "lemma2", "--n", "9", "--B", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("guard violated"), "stderr: {err}");

    let out = mkcs(&["census", "table", "--d", "2", "--n", "3", "--alpha", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kd_rejects_csv_format() {
    let out = mkcs(&[
        "kd", "--n", "3", "--x", "1 1 1", "--lmax", "8", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("--format json"), "stderr: {err}");
}

#[test]
fn sampled_census_is_reproducible_and_seed_sensitive() {
    let args = [
        "census",
        "nullspace",
        "--d",
        "2",
        "--n",
        "3",
        "--lmax",
        "6",
        "--samples",
        "64",
        "--seed",
        "5",
    ];
    let a = mkcs(&args);
    let b = mkcs(&args);
    assert!(a.status.success());
    assert_eq!(stable(&stdout(&a)), stable(&stdout(&b)));

    let mut other = args;
    other[11] = "6";
    let c = mkcs(&other);
    assert_ne!(stable(&stdout(&a)), stable(&stdout(&c)));
}

#[test]
fn worker_count_does_not_change_report_bytes() {
    let args = [
        "census",
        "recovery",
        "--d",
        "3",
        "--n",
        "4",
        "--level",
        "4",
        "--samples",
        "24",
        "--seed",
        "2",
        "--lmax",
        "8",
        "--record-kstar",
    ];
    let one = mkcs_env(&args, &[("MKCS_WORKERS", "1")]);
    let four = mkcs_env(&args, &[("MKCS_WORKERS", "4")]);
    assert!(one.status.success());
    assert_eq!(stable(&stdout(&one)), stable(&stdout(&four)));
}

#[test]
fn csv_projection_has_one_row_per_level() {
    let out = mkcs(&[
        "census",
        "nullspace",
        "--d",
        "2",
        "--n",
        "3",
        "--lmax",
        "8",
        "--exhaustive",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("d,n,mode,samples,level,count,fraction,bound,sigma,pass")
    );
    // Levels 3 through 8.
    assert_eq!(lines.count(), 6);
    assert!(text.contains("2,3,exhaustive,64,8,37,0.578125,1,0,true"));
}

#[test]
fn out_flag_writes_atomically_and_honors_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let out = mkcs(&[
        "census",
        "lemma2",
        "--n",
        "2",
        "--B",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("\"max_annihilators\": 2"));

    let out = mkcs_env(
        &[
            "census",
            "lemma2",
            "--n",
            "2",
            "--B",
            "1",
            "--out",
            "nested.json",
        ],
        &[("MKCS_OUT_DIR", dir.path().to_str().unwrap())],
    );
    assert!(out.status.success());
    let written = std::fs::read_to_string(dir.path().join("nested.json")).unwrap();
    assert!(written.contains("\"subcommand\": \"census lemma2\""));
    // The embedded config records the resolved destination.
    assert!(written.contains("nested.json"));
}

#[test]
fn walsh_census_json_carries_family_rows_and_exact_ratio() {
    let out = mkcs(&[
        "walsh", "census", "--n", "8", "--d", "3", "--level", "6", "--lmax", "8",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["report"]["triple_count"], serde_json::json!(560));
    assert_eq!(report["report"]["failure_count"], serde_json::json!(315));
    assert_eq!(report["report"]["eta"], serde_json::json!(0.5625));
    assert_eq!(
        report["report"]["annihilators_per_multiple"],
        serde_json::json!(35)
    );
    assert_eq!(report["report"]["family"].as_array().unwrap().len(), 56);

    let csv = mkcs(&[
        "walsh", "census", "--n", "8", "--d", "3", "--level", "6", "--lmax", "8", "--format", "csv",
    ]);
    let text = stdout(&csv);
    assert!(text.starts_with("n,d,k_bits,row_indices,zero_output_inputs,failures\n"));
    assert_eq!(text.lines().count(), 57);
}

#[test]
fn kstar_reports_threshold_for_ones_row() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = write_matrix(dir.path(), "ones1x2.txt", "1 2 binary\n1 1\n");
    let out = mkcs(&["kstar", "--matrix", &matrix, "--lmax", "8"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // The opposite-sign pair kills recovery at the first nonzero level.
    assert_eq!(report["report"]["kstar"]["kind"], serde_json::json!("bits"));
    assert_eq!(report["report"]["kstar"]["bits"], serde_json::json!(3));
}

#[test]
fn selftest_passes_and_prints_table() {
    let out = mkcs(&["selftest"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("codec round-trip"));
    assert!(text.contains("hadamard orthogonality"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn invalid_workers_env_is_rejected() {
    let out = mkcs_env(
        &["census", "lemma2", "--n", "2", "--B", "1"],
        &[("MKCS_WORKERS", "zero")],
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("MKCS_WORKERS"));
}
