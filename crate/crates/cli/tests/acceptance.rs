//! CLI acceptance: byte-identical reruns, exit codes, and the documented
//! command examples.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_qplaus")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn scratch_dir(test: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qplaus-{test}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("QPLAUS_SEED")
        .output()
        .expect("spawn qplaus")
}

/// Runs a command twice in fresh directories and asserts stdout and every
/// produced file agree byte for byte.
fn assert_deterministic(test: &str, args: &[&str], outputs: &[&str]) {
    let dir_a = scratch_dir(&format!("{test}-a"));
    let dir_b = scratch_dir(&format!("{test}-b"));
    let out_a = run_in(&dir_a, args);
    let out_b = run_in(&dir_b, args);
    assert_eq!(
        out_a.status.code(),
        out_b.status.code(),
        "exit codes differ for {args:?}"
    );
    assert_eq!(out_a.stdout, out_b.stdout, "stdout differs for {args:?}");
    for name in outputs {
        let a = std::fs::read(dir_a.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let b = std::fs::read(dir_b.join(name)).unwrap();
        assert_eq!(a, b, "artifact {name} differs for {args:?}");
    }
    let _ = std::fs::remove_dir_all(dir_a);
    let _ = std::fs::remove_dir_all(dir_b);
}

/// Criterion 9: every command replays byte-identically from its seed.
#[test]
fn criterion_9_determinism() {
    let single = fixture("single_projector.json");
    let qubit = fixture("qubit_ops.json");
    let single = single.to_str().unwrap();
    let qubit = qubit.to_str().unwrap();

    assert_deterministic(
        "classical",
        &[
            "verify-classical",
            "--tables",
            "5",
            "--seed",
            "7",
            "--out",
            "r.json",
        ],
        &["r.json"],
    );
    assert_deterministic(
        "quantum",
        &[
            "verify-quantum",
            "--dims",
            "3,4,5",
            "--trials",
            "1000",
            "--seed",
            "42",
            "--out",
            "q.json",
        ],
        &["q.json"],
    );
    assert_deterministic(
        "curve",
        &[
            "delta-curve",
            "--r-steps",
            "21",
            "--convention",
            "both",
            "--oracle",
            "20000",
            "--seed",
            "3",
            "--out",
            "c.csv",
            "--report",
            "c.json",
        ],
        &["c.csv", "c.json"],
    );
    assert_deterministic(
        "scan",
        &[
            "delta-scan",
            "--dim",
            "2",
            "--trials",
            "300",
            "--seed",
            "9",
            "--out",
            "s.csv",
        ],
        &["s.csv"],
    );
    assert_deterministic(
        "closure",
        &[
            "closure",
            "--in",
            single,
            "--out",
            "algebra.json",
            "--report",
            "idrep.json",
        ],
        &["algebra.json", "idrep.json"],
    );
    assert_deterministic(
        "lueders",
        &["lueders", "--in", qubit, "--out", "cv.json"],
        &["cv.json"],
    );
    assert_deterministic(
        "born",
        &["born", "--in", qubit, "--out", "born.json"],
        &["born.json"],
    );
    assert_deterministic(
        "oracle",
        &[
            "mc-oracle",
            "--in",
            qubit,
            "--condition",
            "Q",
            "--trials",
            "50000",
            "--seed",
            "11",
            "--out",
            "run.json",
        ],
        &["run.json"],
    );
    println!("ACCEPTANCE 9 determinism: PASS (8 commands replay byte-identically)");
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = scratch_dir("exit-codes");

    // Unknown flags and commands are usage errors (exit 2).
    let usage = run_in(&dir, &["no-such-command"]);
    assert_eq!(usage.status.code(), Some(2));
    let usage = run_in(&dir, &["verify-classical", "--bogus"]);
    assert_eq!(usage.status.code(), Some(2));

    // A passing suite exits 0.
    let pass = run_in(&dir, &["verify-classical", "--tables", "3", "--seed", "1"]);
    assert_eq!(pass.status.code(), Some(0));

    // An impossible tolerance turns residuals into failures: exit 1 with the
    // failing report still written.
    let fail = run_in(
        &dir,
        &[
            "verify-classical",
            "--tables",
            "3",
            "--seed",
            "1",
            "--tol",
            "1e-30",
            "--out",
            "failing.json",
        ],
    );
    assert_eq!(fail.status.code(), Some(1));
    let report = std::fs::read_to_string(dir.join("failing.json")).unwrap();
    assert!(report.contains("\"pass\": false"));

    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn delta_curve_grid_matches_the_documented_example() {
    let dir = scratch_dir("curve-example");
    let out = run_in(
        &dir,
        &[
            "delta-curve",
            "--r-steps",
            "101",
            "--convention",
            "b-then-a",
            "--out",
            "delta.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("delta.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 102, "header plus 101 grid rows");
    let last: Vec<&str> = rows[101].split(',').collect();
    let r: f64 = last[0].parse().unwrap();
    let delta: f64 = last[1].parse().unwrap();
    assert_eq!(r, 1.0);
    assert!(delta.abs() <= 1e-12);
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn closure_lists_the_four_element_algebra() {
    let dir = scratch_dir("closure-example");
    let single = fixture("single_projector.json");
    let out = run_in(&dir, &["closure", "--in", single.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("2 atoms, 4 elements"));
    assert!(stdout.contains("atom 0: rank 2"));
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn lueders_and_born_evaluate_the_qubit_fixture() {
    let dir = scratch_dir("evaluate");
    let qubit = fixture("qubit_ops.json");
    let qubit = qubit.to_str().unwrap();

    // ρ = Q = |→⟩⟨→|, P = |↑⟩⟨↑|: Pr(P|Q) = 1/2 and tr(ρP) = 1/2.
    let out = run_in(&dir, &["lueders", "--in", qubit]);
    assert_eq!(out.status.code(), Some(0));
    let cv: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("conditional JSON on stdout");
    assert!((cv["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let out = run_in(&dir, &["born", "--in", qubit]);
    let b: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((b["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let out = run_in(
        &dir,
        &[
            "mc-oracle",
            "--in",
            qubit,
            "--condition",
            "Q",
            "--trials",
            "200000",
            "--seed",
            "4",
        ],
    );
    let run: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let estimate = run["estimate"].as_f64().unwrap();
    let stderr = run["stderr"].as_f64().unwrap();
    assert!((estimate - 0.5).abs() <= 5.0 * stderr);
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn seed_env_variable_is_honored() {
    let dir = scratch_dir("seed-env");
    let via_env = Command::new(bin())
        .args(["delta-scan", "--dim", "2", "--trials", "50", "--out", "a.csv"])
        .current_dir(&dir)
        .env("QPLAUS_SEED", "123")
        .output()
        .unwrap();
    let via_flag = Command::new(bin())
        .args([
            "delta-scan",
            "--dim",
            "2",
            "--trials",
            "50",
            "--seed",
            "123",
            "--out",
            "b.csv",
        ])
        .current_dir(&dir)
        .env_remove("QPLAUS_SEED")
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(0));
    assert_eq!(via_flag.status.code(), Some(0));
    let a = std::fs::read(dir.join("a.csv")).unwrap();
    let b = std::fs::read(dir.join("b.csv")).unwrap();
    assert_eq!(a, b);
    let _ = std::fs::remove_dir_all(dir);
}
