use frw_entanglement::pipeline::{
    fmt_g17, run_sweep, run_verify_with, to_csv_string, Axis, SweepGrid, VerifyHooks, VerifyLevel,
    CSV_HEADER,
};
use frw_entanglement::{mixing_ratio_x, ExpansionParams, ModeParams, Spin};
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_frw-entangle");

fn grid(spin: Spin) -> SweepGrid {
    SweepGrid {
        epsilon: Axis::Values(vec![0.0, 1.0, 8.0]),
        rho: Axis::Values(vec![0.5, 10.0]),
        m: Axis::linspace(0.0, 3.0, 4),
        k: Axis::Values(vec![0.0, 0.1, 2.0]),
        spin,
        output_path: None,
    }
}

fn sweep_in_pool(g: &SweepGrid, threads: usize) -> String {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| to_csv_string(&run_sweep(g).unwrap()))
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

#[test]
fn sweep_output_independent_of_thread_count() {
    for spin in [Spin::One, Spin::Half] {
        let g = grid(spin);
        let one = sweep_in_pool(&g, 1);
        assert_eq!(one, sweep_in_pool(&g, 4));
        assert_eq!(one, sweep_in_pool(&g, 4));
        assert!(one.starts_with(&format!("{CSV_HEADER}\n")));
        assert_eq!(one.lines().count(), 1 + 3 * 2 * 4 * 3);
        assert!(!one.contains('\r'));
    }
}

#[test]
fn csv_rows_rederived_by_cli() {
    for spin in [Spin::One, Spin::ThreeHalves] {
        let csv = to_csv_string(&run_sweep(&grid(spin)).unwrap());
        for line in csv.lines().skip(1).step_by(5) {
            let f: Vec<&str> = line.split(',').collect();
            let out = cli(&[
                "entropy", "--spin", f[4], "--epsilon", f[0], "--rho", f[1], "--m", f[2], "--k", f[3],
            ]);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            let stdout = String::from_utf8(out.stdout).unwrap();
            assert_eq!(stdout, format!("{CSV_HEADER}\n{line}\n"));
        }
    }
}

#[test]
fn rows_satisfy_invariants() {
    let rows = run_sweep(&grid(Spin::Zero)).unwrap();
    for r in &rows {
        assert!(r.error.is_none());
        assert!(r.x >= 0.0 && r.entropy_bits >= 0.0, "{r:?}");
        if r.m == 0.0 || r.epsilon == 0.0 {
            assert_eq!(r.entropy_bits, 0.0);
        }
    }
}

#[test]
fn sweep_cli_reads_config_and_out_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("grid.json");
    let from_config = dir.path().join("from_config.csv");
    let from_flag = dir.path().join("from_flag.csv");
    std::fs::write(
        &config,
        format!(
            r#"{{"epsilon_range": 2, "rho_range": 2, "m_range": {{"min": 0.5, "max": 1.5, "count": 3}},
                "k_range": [0, 1], "spin": "1", "output_path": {:?}}}"#,
            from_config.to_str().unwrap()
        ),
    )
    .unwrap();
    assert!(cli(&["sweep", "--config", config.to_str().unwrap()]).status.success());
    let written = std::fs::read_to_string(&from_config).unwrap();
    assert_eq!(written.lines().count(), 7);

    assert!(cli(&["sweep", "--config", config.to_str().unwrap(), "--out", from_flag.to_str().unwrap()])
        .status
        .success());
    assert_eq!(std::fs::read_to_string(&from_flag).unwrap(), written);
}

#[test]
fn bad_config_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.json");
    std::fs::write(&config, r#"{"epsilon_range": {"min": 2, "max": 1, "count": 3}, "rho_range": 1, "m_range": 1, "k_range": 1, "spin": "0"}"#).unwrap();
    let out = cli(&["sweep", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(cli(&["sweep", "--config", "/nonexistent.json"]).status.code(), Some(1));
}

#[test]
fn cli_exit_codes() {
    assert_eq!(cli(&["entropy", "--spin", "2", "--m", "1", "--k", "0", "--epsilon", "1", "--rho", "1"]).status.code(), Some(1));
    assert_eq!(cli(&["bogoliubov", "--m", "1"]).status.code(), Some(1));
    assert_eq!(cli(&["nonsense"]).status.code(), Some(1));
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
    let out = cli(&["bogoliubov", "--m", "1", "--k", "1", "--epsilon", "1", "--rho", "1", "--method", "paper", "--statistics", "fermion"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn error_row_from_cli() {
    let out = cli(&["entropy", "--spin", "half", "--m", "1", "--k", "1", "--epsilon", "-1", "--rho", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let row = stdout.lines().nth(1).unwrap();
    assert!(row.starts_with("-1,1,1,1,half,nan,nan,"), "{row}");
}

#[test]
fn bogoliubov_cli_json() {
    let out = cli(&["bogoliubov", "--m", "1", "--k", "0", "--epsilon", "1.5", "--rho", "1", "--method", "canonical", "--statistics", "boson"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let a2 = v["abs_alpha_sq"].as_f64().unwrap();
    let b2 = v["abs_beta_sq"].as_f64().unwrap();
    assert!((a2 - b2 - 1.0).abs() < 1e-12);
    let p = ExpansionParams::new(1.5, 1.0).unwrap();
    let expected = mixing_ratio_x(&p, &ModeParams::new(1.0, 0.0, Spin::Zero).unwrap());
    assert!((v["x"].as_f64().unwrap() / expected - 1.0).abs() < 1e-10);
    for key in ["re", "im"] {
        assert!(v["alpha"][key].is_f64() && v["beta"][key].is_f64());
    }

    let out = cli(&["bogoliubov", "--m", "1", "--k", "1", "--epsilon", "2", "--rho", "2", "--method", "ode", "--statistics", "fermion"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let sum = v["abs_alpha_sq"].as_f64().unwrap() + v["abs_beta_sq"].as_f64().unwrap();
    assert!((sum - 1.0).abs() < 1e-8);
}

#[test]
fn figure_cli_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let out = cli(&["figure", "fig2", "--resolution", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 26);
    for line in csv.lines().skip(1) {
        let f: Vec<f64> = line.split(',').filter_map(|s| s.parse().ok()).collect();
        if f[0] == 0.0 || f[1] == 0.0 {
            assert_eq!(f[f.len() - 1], 0.0, "{line}");
        }
    }
}

#[test]
fn verify_cli_fast_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = cli(&["verify", "--level", "fast", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["overall"], serde_json::json!(true));
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["check", "params", "expected", "actual", "tol", "pass"] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn perturbed_sinh_formula_fails_verify() {
    fn perturbed(p: &ExpansionParams, mode: &ModeParams) -> f64 {
        mixing_ratio_x(p, mode) * (1.0 + 1e-8)
    }
    let report = run_verify_with(VerifyLevel::Fast, &VerifyHooks { mixing_ratio: perturbed });
    assert!(!report.overall);
    let failed: Vec<&str> = report.failures().map(|c| c.check.as_str()).collect();
    assert_eq!(failed, ["gamma_vs_sinh_mixing_ratio"]);
}

#[test]
fn csv_numbers_round_trip() {
    for v in [0.1, 1.0 / 3.0, 2.0f64.sqrt() * 1e-300, 6.02e23, -7.5e-9] {
        assert_eq!(fmt_g17(v).parse::<f64>().unwrap(), v);
    }
}
