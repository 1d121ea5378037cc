//! End-to-end checks of the `scan` binary: argument handling, exit codes,
//! output format, and determinism across thread counts.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn scan_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scan"))
}

fn run(args: &[&str]) -> Output {
    scan_bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_map(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

/// 12x10 map with one hot pixel.
fn demo_map(dir: &Path) -> String {
    let mut rows = Vec::new();
    for y in 0..10 {
        let row: Vec<String> = (0..12)
            .map(|x| if (x, y) == (6, 4) { "9".into() } else { "0".to_string() })
            .collect();
        rows.push(row.join(","));
    }
    write_map(dir, "demo.csv", &(rows.join("\n") + "\n"))
}

#[test]
fn scan_writes_csv_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let map = demo_map(dir.path());
    let out = run(&["--map", &map, "--r-src", "1.0", "--r-in", "2.0", "--r-out", "4.0"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,y,n_src,n_bak,f,p,log_p,sigma");
    let body: Vec<&str> = lines.collect();
    assert_eq!(body.len(), 120); // min_bak_pixels=8 keeps every pixel here
    for line in &body {
        assert_eq!(line.split(',').count(), 8);
    }
}

#[test]
fn scan_output_is_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let map = demo_map(dir.path());
    let mut outputs = Vec::new();
    for threads in ["1", "3", "8"] {
        let path = dir.path().join(format!("out{threads}.csv"));
        let out = run(&[
            "--map", &map,
            "--r-src", "1.5",
            "--r-in", "2.0",
            "--r-out", "4.5",
            "--threads", threads,
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        outputs.push(fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn scan_seed_flag_runs_the_oracle_spot_check() {
    let dir = tempfile::tempdir().unwrap();
    let map = demo_map(dir.path());
    let out = run(&[
        "--map", &map,
        "--r-src", "1.0",
        "--r-in", "2.0",
        "--r-out", "4.0",
        "--seed", "7",
        "--out", dir.path().join("o.csv").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("spot-check"), "{err}");
}

#[test]
fn sigma_min_sorts_and_filters() {
    let dir = tempfile::tempdir().unwrap();
    let map = demo_map(dir.path());
    let out = run(&[
        "--map", &map,
        "--r-src", "1.0",
        "--r-in", "2.0",
        "--r-out", "4.0",
        "--sigma-min", "2.0",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let sigmas: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(7).unwrap().parse().unwrap())
        .collect();
    assert!(!sigmas.is_empty());
    assert!(sigmas.iter().all(|&s| s >= 2.0));
    assert!(sigmas.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn trials_factor_caps_p_at_one() {
    let dir = tempfile::tempdir().unwrap();
    let map = demo_map(dir.path());
    let run_with = |extra: &[&str]| {
        let mut args = vec![
            "--map", &map,
            "--r-src", "1.0",
            "--r-in", "2.0",
            "--r-out", "4.0",
        ];
        args.extend_from_slice(extra);
        let out = run(&args);
        assert_eq!(code(&out), 0);
        String::from_utf8(out.stdout).unwrap()
    };
    let plain = run_with(&[]);
    let scaled = run_with(&["--trials-factor", "1000"]);
    for (a, b) in plain.lines().skip(1).zip(scaled.lines().skip(1)) {
        let pa: f64 = a.split(',').nth(5).unwrap().parse().unwrap();
        let pb: f64 = b.split(',').nth(5).unwrap().parse().unwrap();
        let want = (pa * 1000.0).min(1.0);
        assert!((pb - want).abs() <= 1e-12 * want);
        let lb: f64 = b.split(',').nth(6).unwrap().parse().unwrap();
        let sb: f64 = b.split(',').nth(7).unwrap().parse().unwrap();
        assert!(lb <= 0.0);
        if pb == 1.0 {
            assert_eq!(lb, 0.0);
            assert_eq!(sb, 0.0);
        }
    }
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let map = demo_map(dir.path());
    // Missing required flags.
    assert_eq!(code(&run(&["--map", &map])), 1);
    // Unknown flag.
    assert_eq!(code(&run(&["--bogus"])), 1);
    // Radii out of order.
    let out = run(&["--map", &map, "--r-src", "4.0", "--r-in", "2.0", "--r-out", "6.0"]);
    assert_eq!(code(&out), 1);
    // Zero-valued knobs.
    for extra in [
        ["--trials-factor", "0"],
        ["--threads", "0"],
        ["--min-bak-pixels", "0"],
    ] {
        let out = run(&[
            "--map", &map,
            "--r-src", "1.0",
            "--r-in", "2.0",
            "--r-out", "4.0",
            extra[0], extra[1],
        ]);
        assert_eq!(code(&out), 1, "{extra:?}");
    }
    // Bad pvalue argument.
    assert_eq!(code(&run(&["pvalue", "--n", "5", "--b", "10", "--f", "1.5"])), 1);
}

#[test]
fn input_problems_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_map(dir.path(), "bad.csv", "1,2\n3,x\n");
    let out = run(&["--map", &bad, "--r-src", "1.0", "--r-in", "2.0", "--r-out", "4.0"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("row 2, col 2"), "{err}");

    let missing = dir.path().join("nope.csv");
    let out = run(&[
        "--map", missing.to_str().unwrap(),
        "--r-src", "1.0", "--r-in", "2.0", "--r-out", "4.0",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["pvalue", "--help"])), 0);
}

#[test]
fn pvalue_prints_both_methods_in_agreement() {
    let out = run(&["pvalue", "--n", "5", "--b", "10", "--f", "0.25"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut ps = Vec::new();
    for line in text.lines() {
        assert!(line.starts_with("method="), "{line}");
        let p: f64 = line
            .split_whitespace()
            .find_map(|kv| kv.strip_prefix("p="))
            .unwrap()
            .parse()
            .unwrap();
        ps.push(p);
    }
    assert_eq!(ps.len(), 2);
    let want = 0.313_514_058_478_176_6; // C(15,n) tail at f=1/4 from n=5
    for p in ps {
        assert!((p - want).abs() <= 1e-12 * want);
    }
    assert!(text.contains("truncation_bound="));
}

#[test]
fn verify_lemmas_passes_and_prints_records() {
    let out = run(&["verify-lemmas"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("kind=lemma").count(), 5);
    assert_eq!(text.matches("result=PASS").count(), 5);
    assert!(!text.contains("FAIL"));
    for id in ["lemma1", "lemma2", "lemma3", "theorem", "factorization"] {
        assert!(text.contains(&format!("id={id}")), "missing {id}");
    }
}

#[test]
fn calibrate_passes_on_a_healthy_model() {
    let out = run(&["calibrate", "--mu", "2.0", "--alpha", "1.0", "--trials", "20000"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("kind=calibration-summary"));
    assert!(text.contains("result: PASS"));
}

#[test]
fn calibrate_rejects_bad_model_as_usage() {
    assert_eq!(code(&run(&["calibrate", "--mu", "-1.0", "--alpha", "1.0", "--trials", "10"])), 1);
    assert_eq!(code(&run(&["calibrate", "--mu", "1.0", "--alpha", "1.0", "--trials", "0"])), 1);
}
