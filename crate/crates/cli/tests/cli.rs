//! End-to-end checks of the `tie` binary: exit codes, report files,
//! determinism, and config handling.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn tie() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tie"))
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir()
        .join("tie-cli-tests")
        .join(format!("{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn verify_is_deterministic_and_exits_zero() {
    let dir = scratch("verify-det");
    let (a, b) = (dir.join("a"), dir.join("b"));
    for out in [&a, &b] {
        let res = run(tie()
            .args(["verify", "--trials", "40", "--seed", "5", "--out"])
            .arg(out));
        assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    }
    assert_eq!(
        read(&a.join("verify_trials.csv")),
        read(&b.join("verify_trials.csv")),
        "same config and seed must give byte-identical reports"
    );
    assert_eq!(
        read(&a.join("verify_summary.csv")),
        read(&b.join("verify_summary.csv"))
    );

    // a different seed changes the report
    let c = dir.join("c");
    run(tie()
        .args(["verify", "--trials", "40", "--seed", "6", "--out"])
        .arg(&c));
    assert_ne!(
        read(&a.join("verify_trials.csv")),
        read(&c.join("verify_trials.csv"))
    );
}

#[test]
fn verify_single_frequency_is_exact_to_1e12() {
    // one rotation plane: closed form and oracle coincide up to roundoff
    let dir = scratch("verify-dim2");
    let res = run(tie()
        .args([
            "verify",
            "--set",
            "dim=2",
            "--trials",
            "30",
            "--threshold",
            "1e-12",
            "--out",
        ])
        .arg(&dir));
    assert!(res.status.success(), "{}", stdout(&res));
    assert!(stdout(&res).contains("verify: PASS"));
}

#[test]
fn verify_fails_against_an_impossible_threshold() {
    let dir = scratch("verify-thresh");
    let res = run(tie()
        .args(["verify", "--trials", "10", "--threshold", "1e-20", "--out"])
        .arg(&dir));
    assert!(!res.status.success());
    assert!(stdout(&res).contains("verify: FAIL"));
}

#[test]
fn unwritable_output_path_leaves_no_partial_files() {
    let dir = scratch("verify-unwritable");
    let blocker = dir.join("blocker");
    std::fs::write(&blocker, "file, not a directory").unwrap();
    let out = blocker.join("sub");
    let res = run(tie().args(["verify", "--trials", "5", "--out"]).arg(&out));
    assert!(!res.status.success());
    assert!(!out.exists(), "no partial output may appear");
}

#[test]
fn decay_reports_the_flagship_curve_minimum() {
    let dir = scratch("decay");
    let res = run(tie()
        .args(["decay", "--start", "0", "--end", "10", "--out"])
        .arg(&dir));
    assert!(res.status.success());
    let text = stdout(&res);
    assert!(
        text.contains("8.94063779443e-1"),
        "expected the frozen curve minimum in: {text}"
    );
    let csv = read(&dir.join("decay.csv"));
    assert!(csv.starts_with("offset,value\n"));
    assert_eq!(csv.lines().count(), 202, "201 offsets plus header");
    // offset 0 row carries exactly 1
    assert!(csv.contains("\n0.00000000000e0,1.00000000000e0\n"));
}

#[test]
fn decay_degenerate_normalization_names_the_radius() {
    let dir = scratch("decay-degenerate");
    let res = run(tie()
        .args([
            "decay",
            "--set",
            "dim=2",
            "--set",
            "gamma=1",
            "--start",
            "0",
            "--end",
            "6.283185307179586",
            "--out",
        ])
        .arg(&dir));
    assert!(!res.status.success());
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("scaled radius"), "stderr: {err}");
    assert!(err.contains("3.14159"), "stderr names the radius: {err}");
}

#[test]
fn metrics_fixture_matches_the_shipped_ledger() {
    let dir = scratch("metrics");
    let res = run(tie()
        .arg("metrics")
        .arg(fixtures().join("metrics/timeline.json"))
        .arg(fixtures().join("metrics/annotations.json"))
        .arg("--out")
        .arg(&dir));
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    assert_eq!(
        read(&dir.join("metrics_summary.csv")),
        read(&fixtures().join("metrics/expected_metrics.csv")),
        "metric values must match the hand-enumerated ledger"
    );
    let events = read(&dir.join("metrics_events.csv"));
    assert_eq!(events.lines().count(), 5, "four event rows plus header");
}

#[test]
fn metrics_rejects_unknown_event_ids_listing_paths() {
    let dir = scratch("metrics-unknown");
    let bad = dir.join("annotations.json");
    std::fs::write(
        &bad,
        r#"{ "schema": "tie-annotations/1",
             "annotations": [ { "event_id": "ghost", "occurred": 1.0,
                                "start_bias": 0.0, "end_bias": 0.0 } ] }"#,
    )
    .unwrap();
    let res = run(tie()
        .arg("metrics")
        .arg(fixtures().join("metrics/timeline.json"))
        .arg(&bad)
        .arg("--out")
        .arg(&dir));
    assert!(!res.status.success());
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("unknown event id"), "stderr: {err}");
    assert!(err.contains("annotations[0]"), "stderr lists paths: {err}");
}

#[test]
fn validate_exit_codes_follow_the_violation_count() {
    let dir = scratch("validate");
    let cases = [
        ("clean.json", 0, true),
        ("one_violation.json", 1, false),
        ("four_violations.json", 4, false),
    ];
    for (file, expected, ok) in cases {
        let res = run(tie()
            .arg("validate")
            .arg(fixtures().join("validate").join(file))
            .arg("--out")
            .arg(&dir));
        assert_eq!(res.status.success(), ok, "{file}");
        assert!(
            stdout(&res).contains(&format!("{expected} violation(s)")),
            "{file}: {}",
            stdout(&res)
        );
    }

    // a conformant directory passes as a whole
    let res = run(tie()
        .arg("validate")
        .arg(fixtures().join("corpus"))
        .arg("--out")
        .arg(&dir));
    assert!(res.status.success());
    assert!(stdout(&res).contains("10 file(s), 0 violation(s)"));
}

#[test]
fn stats_row_matches_the_hand_computation() {
    let dir = scratch("stats");
    let res = run(tie()
        .arg("stats")
        .arg(fixtures().join("corpus"))
        .arg("--out")
        .arg(&dir)
        .args(["--format", "jsonl"]));
    assert!(res.status.success());
    let row = read(&dir.join("stats.jsonl"));
    let v: serde_json::Value = serde_json::from_str(row.trim()).unwrap();
    assert_eq!(v["clips"], 10);
    assert_eq!(v["events_per_clip"], "2.00000000000e0");
    assert_eq!(v["mean_event_duration_s"], "2.00000000000e0");
    assert_eq!(v["total_events"], 20);
    assert_eq!(v["total_duration_s"], "4.00000000000e1");
    assert_eq!(v["total_caption_chars"], 170);
    assert_eq!(v["overlap_prob"], "5.00000000000e-1");
}

#[test]
fn robustness_rejects_delta_at_or_beyond_the_radius_range() {
    let dir = scratch("robustness-delta");
    let res = run(tie()
        .args(["robustness", "--mode", "bounded", "--delta", "9.0", "--trials", "5", "--out"])
        .arg(&dir));
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("delta"));
}

#[test]
fn robustness_zero_delta_produces_all_zero_shifts() {
    let dir = scratch("robustness-zero");
    let res = run(tie()
        .args(["robustness", "--mode", "bounded", "--delta", "0", "--trials", "25", "--out"])
        .arg(&dir));
    assert!(res.status.success());
    let rows = read(&dir.join("robustness_trials.csv"));
    for line in rows.lines().skip(1) {
        let shift = line.split(',').nth(6).unwrap();
        assert_eq!(shift, "0.00000000000e0", "row: {line}");
    }
}

#[test]
fn config_file_and_set_overrides_land_in_the_recorded_config() {
    let dir = scratch("config");
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "gamma = 2.0\nseed = 7\nformat = jsonl\n").unwrap();
    let res = run(tie()
        .arg("decay")
        .args(["--start", "0", "--end", "4"])
        .arg("--config")
        .arg(&cfg)
        .args(["--set", "seed=9", "--out"])
        .arg(&dir));
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let recorded = read(&dir.join("run_config.txt"));
    assert!(recorded.contains("gamma = 2"), "{recorded}");
    assert!(recorded.contains("seed = 9"), "{recorded}");
    assert!(recorded.contains("format = jsonl"), "{recorded}");
    assert!(dir.join("decay.jsonl").exists());
}
