use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dsw_edge::output::read_columns;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dsw-edge"));
    c.env_remove("OUTPUT_DIR");
    c
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let p = dir.join("run.toml");
    fs::write(&p, format!("A = -1.0\nB = 0.5\noutput_dir = {:?}\n{body}", dir.join("out").display().to_string())).unwrap();
    p
}

fn run(args: &[&str], cfg: &Path) -> Output {
    bin().args(args).arg("--config").arg(cfg).output().unwrap()
}

#[test]
fn asympt_is_deterministic_and_bounded() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "rho_list = [0.1, 0.7, 1.7, 3.2]\nt_list = [20.0, 300.0]\n");
    let out = run(&["asympt", "--jobs", "3"], &cfg);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.path().join("out/asympt.csv");
    let first = fs::read(&path).unwrap();
    assert!(run(&["asympt"], &cfg).status.success());
    assert_eq!(first, fs::read(&path).unwrap(), "jobs must not change the bytes");

    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("# dsw-edge schema v1\n# config: {"));
    let cols = read_columns(&path, &["rho", "abs_q_sol", "re_q_sol", "im_q_sol"]).unwrap();
    assert_eq!(cols[0].len(), 8);
    for (j, &rho) in cols[0].iter().enumerate() {
        assert!(cols[1][j] <= 2.0 * 0.5);
        if rho == 0.1 {
            assert_eq!((cols[2][j], cols[3][j]), (0.0, 0.0));
        } else {
            assert!(cols[1][j] > 0.0);
        }
    }
}

#[test]
fn json_mirrors_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "rho_list = [0.7]\nt_list = [50.0]\n");
    assert!(run(&["asympt"], &cfg).status.success());
    assert!(run(&["asympt", "--format", "json"], &cfg).status.success());
    let names = ["rho", "t", "x", "abs_q_total", "psi", "nu"];
    let a = read_columns(&dir.path().join("out/asympt.csv"), &names).unwrap();
    let b = read_columns(&dir.path().join("out/asympt.json"), &names).unwrap();
    assert_eq!(a, b);
}

#[test]
fn out_flag_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "rho_list = [0.3]\nt_list = [10.0]\n");
    let env_dir = dir.path().join("from_env");
    let st = bin().arg("asympt").arg("--config").arg(&cfg).env("OUTPUT_DIR", &env_dir).status().unwrap();
    assert!(st.success());
    assert!(env_dir.join("asympt.csv").is_file());
    let flag_dir = dir.path().join("from_flag");
    let st = bin().arg("asympt").arg("--config").arg(&cfg).arg("--out").arg(&flag_dir).env("OUTPUT_DIR", &env_dir).status().unwrap();
    assert!(st.success());
    assert!(flag_dir.join("asympt.csv").is_file());
}

#[test]
fn parametrix_check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_config(dir.path(), "");
    let out = run(&["parametrix-check"], &good);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let table = fs::read_to_string(dir.path().join("out/parametrix_check.csv")).unwrap();
    assert!(table.contains("beta1_beta2_minus_nu"));
    assert!(!table.contains(",fail\n"));

    let bad = write_config(dir.path(), "checks.inject_fault = true\n");
    let out = run(&["parametrix-check"], &bad);
    assert_eq!(out.status.code(), Some(1));
    let table = fs::read_to_string(dir.path().join("out/parametrix_check.csv")).unwrap();
    assert!(table.lines().any(|l| l.starts_with("laguerre,jump,") && l.ends_with(",fail")));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "t_list = [0.5]\n");
    assert_eq!(run(&["asympt"], &cfg).status.code(), Some(2));
    assert_eq!(bin().arg("asympt").status().unwrap().code(), Some(2));
    assert_eq!(run(&["asympt"], &dir.path().join("none.toml")).status.code(), Some(2));
}

#[test]
fn missing_snapshot_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "t_list = [30.0]\n");
    let out = run(&["compare"], &cfg);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("config error"));
}

#[test]
fn self_compare_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "t_list = [30.0, 60.0]\ncompare.source = \"self_check\"\nsolver.dx = 0.2\nsolver.dt = 0.01\n");
    let out = run(&["compare"], &cfg);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for t in [30, 60] {
        let cols = read_columns(&dir.path().join(format!("out/compare_t{t}.csv")), &["diff"]).unwrap();
        assert!(!cols[0].is_empty() && cols[0].iter().all(|d| *d == 0.0));
    }
    let s = read_columns(&dir.path().join("out/compare_summary.csv"), &["linf_env", "l2_env", "lead_offset"]).unwrap();
    assert!(s.iter().flatten().all(|v| *v == 0.0));
}

#[test]
fn simulate_then_compare_from_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "t_list = [2.0, 3.0]\nx_window = [-6.0, 4.0]\nsolver.dx = 0.1\nsolver.dt = 0.005\nsolver.t_final = 3.0\nsolver.snapshots = [2.0]\n",
    );
    let out = run(&["simulate"], &cfg);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let snap = dir.path().join("out/snapshot_t2.csv");
    let cols = read_columns(&snap, &["x", "re_q", "im_q", "abs_q"]).unwrap();
    assert!(cols[0].len().is_power_of_two());
    for ((re, im), abs) in cols[1].iter().zip(&cols[2]).zip(&cols[3]) {
        assert!((re.hypot(*im) - abs).abs() <= 1e-15 * (1.0 + abs));
    }
    let drift = read_columns(&dir.path().join("out/drift.csv"), &["t", "mass_drift"]).unwrap();
    assert_eq!(drift[0], vec![0.0, 2.0, 3.0]);
    assert!(drift[1].iter().all(|d| d.abs() < 1e-10));
    let out = run(&["compare"], &cfg);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = read_columns(&dir.path().join("out/compare_summary.csv"), &["t", "linf_env"]).unwrap();
    assert_eq!(s[0], vec![2.0, 3.0]);
    assert!(s[1].iter().all(|v| v.is_finite() && *v > 0.0));
}

#[test]
fn zero_field_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "solver.initial = \"zero\"\nsolver.t_final = 0.5\nsolver.snapshots = [0.25]\n");
    assert!(run(&["simulate"], &cfg).status.success());
    let cols = read_columns(&dir.path().join("out/snapshot_t0.5.csv"), &["abs_q"]).unwrap();
    assert!(cols[0].iter().all(|v| *v == 0.0));
}
