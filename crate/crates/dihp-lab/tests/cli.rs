//! End-to-end checks of the command-line interface, including exit codes.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dihp-lab"))
}

fn instance_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances").join(name)
}

#[test]
fn lp_reports_triangle_values() {
    let out = bin()
        .args(["lp", "--instance"])
        .arg(instance_path("maxcut-triangle.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["val"], "2/3");
    assert_eq!(v["val_lp"], "1");
    assert_eq!(v["ratio"], "2/3");
}

#[test]
fn malformed_instance_exits_with_usage_code() {
    let dir = std::env::temp_dir().join("dihp-lab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{oops").unwrap();
    let out = bin().args(["lp", "--instance"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn cap_exceeded_exits_with_cap_code() {
    let out = bin()
        .args(["lp", "--cap-enum", "4", "--instance"])
        .arg(instance_path("maxcut-triangle.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("enumeration"), "stderr: {stderr}");
}

#[test]
fn verify_fourier_suite_passes() {
    let out = bin().args(["verify", "--suite", "fourier", "--seed", "5"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("parseval"));
    assert!(stdout.contains("0 failed"));
}

#[test]
fn seed_env_fallback_is_honored() {
    let out = bin()
        .args(["verify", "--suite", "fourier"])
        .env("DIHP_LAB_SEED", "9")
        .output()
        .unwrap();
    assert!(out.status.success());
    let missing = bin()
        .args(["verify", "--suite", "fourier"])
        .env_remove("DIHP_LAB_SEED")
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn injected_fault_fails_with_named_check() {
    let out = bin()
        .args(["verify", "--suite", "fourier", "--seed", "5"])
        .env("DIHP_LAB_FAULT", "parseval")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("parseval"), "stderr must name the failing check: {stderr}");
}

#[test]
fn game_exact_mode_on_tiny_instance() {
    let out = bin()
        .args([
            "game",
            "--n",
            "1",
            "--alpha",
            "1/1",
            "--K",
            "2",
            "--protocol",
            "cycle-consistency",
            "--mode",
            "exact",
            "--instance",
        ])
        .arg(instance_path("maxcut-edge.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!((v["estimate"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn game_records_are_seed_reproducible() {
    let run = || {
        bin()
            .args([
                "game",
                "--preset",
                "maxcut-tiny",
                "--protocol",
                "cycle-consistency",
                "--mode",
                "mc",
                "--trials",
                "400",
                "--seed",
                "11",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
