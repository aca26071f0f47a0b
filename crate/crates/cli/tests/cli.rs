use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const RL_CONFIG: &str =
    r#"{"schema":1,"a":0,"b":1,"xi":0.5,"eta":0.3,"k":1,"rho":1,"beta":2.5,"gamma":0.7,"omega":0}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kprabhakar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn ml_exponential_and_trivial_cases() {
    let out = run(&["ml", "--k", "1", "--rho", "1", "--beta", "1", "--gamma", "1", "--z", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(rel(v["value"].as_f64().unwrap(), std::f64::consts::E) < 1e-13);
    assert!(v["terms_used"].as_u64().unwrap() > 1);

    let out = run(&["ml", "--z", "0", "--beta", "2", "--k", "1"]);
    assert_eq!(json(&out)["value"].as_f64(), Some(1.0));

    let out = run(&["ml", "--gamma", "0", "--k", "1", "--beta", "3", "--z", "7.3"]);
    assert_eq!(json(&out)["value"].as_f64(), Some(0.5));

    let out = run(&["ml", "--beta", "1", "--z", "-2"]);
    assert!(rel(json(&out)["value"].as_f64().unwrap(), (-2.0_f64).exp()) < 1e-12);
}

#[test]
fn ml_reports_nonconvergence_with_exit_2() {
    let out = run(&["ml", "--beta", "1", "--z", "50", "--max-terms", "5"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("did not converge"));
}

#[test]
fn bad_flags_exit_1() {
    assert_eq!(code(&run(&["ml", "--z", "1"])), 1);
    assert_eq!(code(&run(&["ml", "--beta", "x", "--z", "1"])), 1);
    assert_eq!(code(&run(&["nonsense"])), 1);
    assert_eq!(code(&run(&[])), 1);
    // The q sources are mutually exclusive.
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", RL_CONFIG);
    let cfg = cfg.to_str().unwrap();
    assert_eq!(code(&run(&["hw", "--config", cfg, "--q-const", "1", "--q-poly", "1,2"])), 1);
    assert_eq!(code(&run(&["hw", "--config", cfg])), 1);
    assert_eq!(code(&run(&["hw", "--config", cfg, "--q-poly", "1,abc"])), 1);
    assert_eq!(code(&run(&["hw", "--config", "/nonexistent/c.json", "--q-const", "1"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn kernel_and_jet() {
    let out = run(&["kernel", "--beta", "2.5", "--t", "1", "--jet", "1"]);
    assert_eq!(code(&out), 0);
    // d/dx x^{3/2}/Γ(5/2) at 1 = 1/Γ(3/2).
    assert!(rel(json(&out)["value"].as_f64().unwrap(), 2.0 / std::f64::consts::PI.sqrt()) < 1e-13);
    let out = run(&["kernel", "--beta", "2.5", "--t", "-1"]);
    assert_eq!(json(&out)["value"].as_f64(), Some(0.0));
    assert_eq!(code(&run(&["kernel", "--beta", "2.5", "--t", "-1", "--jet", "0"])), 3);
}

#[test]
fn integral_and_derivative_power_functions() {
    // P 1 at x = 1 with ω = 0 is 1/Γ(β+1).
    let out = run(&["integral", "--beta", "2.5", "--x", "1", "--f-const", "1"]);
    assert_eq!(code(&out), 0);
    assert!(rel(json(&out)["value"].as_f64().unwrap(), 1.0 / 3.323_350_970_447_843) < 1e-9);

    // Riemann-Liouville: D t² = Γ(3)/Γ(1/2) t^{-1/2}.
    let out = run(&["derivative", "--beta", "2.5", "--x", "0.6", "--b", "1", "--f-poly", "0,0,1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["m"].as_u64(), Some(3));
    assert_eq!(v["h"].as_f64(), Some(1e-3));
    let expect = 2.0 / std::f64::consts::PI.sqrt() / 0.6_f64.sqrt();
    assert!(rel(v["value"].as_f64().unwrap(), expect) < 1e-4);

    // Stencil outside [a, b].
    let out = run(&["derivative", "--beta", "2.5", "--x", "0.001", "--b", "1", "--f-const", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn integral_reads_csv_samples() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.csv");
    fs::write(&p, "t,f\n0,2\n1,2\n").unwrap();
    let a = json(&run(&["integral", "--beta", "2.5", "--x", "0.8", "--f-csv", p.to_str().unwrap()]));
    let b = json(&run(&["integral", "--beta", "2.5", "--x", "0.8", "--f-const", "2"]));
    assert!(rel(a["value"].as_f64().unwrap(), b["value"].as_f64().unwrap()) < 1e-12);
}

#[test]
fn green_grid_export() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", RL_CONFIG);
    let csv = dir.path().join("g.csv");
    let n = 20;
    let out = run(&[
        "green",
        "--config",
        cfg.to_str().unwrap(),
        "--grid",
        &n.to_string(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["min"].as_f64().unwrap() >= -1e-12);
    assert_eq!(v["checks"]["passed"].as_bool(), Some(true));

    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,s,G"));
    let rows: Vec<[f64; 3]> = lines
        .map(|l| {
            let c: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [c[0], c[1], c[2]]
        })
        .collect();
    assert_eq!(rows.len(), (n + 1) * (n + 1));
    let at_b: Vec<_> = rows.iter().filter(|r| r[1] == 1.0).collect();
    assert_eq!(at_b.len(), n + 1);
    assert!(at_b.iter().all(|r| r[2] == 0.0));
}

#[test]
fn green_point_and_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let text = RL_CONFIG.replace("\"beta\":2.5", "\"beta\":3");
    let cfg = write_config(dir.path(), "c.json", &text);
    let out = run(&["green", "--config", cfg.to_str().unwrap(), "--grid", "4", "--t", "1", "--s", "0.5"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["warnings"][0]["kind"].as_str(), Some("integer_order"));
    assert!(v["point"]["G"].as_f64().unwrap() > 0.0);
}

#[test]
fn degenerate_and_invalid_configs_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", &RL_CONFIG.replace("\"eta\":0.3", "\"eta\":5"));
    let out = run(&["green", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("delta"));
    assert_eq!(code(&run(&["hw", "--config", cfg.to_str().unwrap(), "--q-const", "1"])), 3);

    let cfg = write_config(dir.path(), "d.json", &RL_CONFIG.replace("\"xi\":0.5", "\"xi\":1.5"));
    assert_eq!(code(&run(&["critical", "--config", cfg.to_str().unwrap(), "--n", "16"])), 3);

    let cfg = write_config(dir.path(), "e.json", &RL_CONFIG.replace("\"schema\":1", "\"schema\":7"));
    assert_eq!(code(&run(&["green", "--config", cfg.to_str().unwrap()])), 1);
}

#[test]
fn hw_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", RL_CONFIG);
    let cfg = cfg.to_str().unwrap();

    let out = run(&["hw", "--config", cfg, "--q-const", "0"]);
    assert_eq!(code(&out), 10);
    assert_eq!(json(&out)["verdict"].as_str(), Some("no_nontrivial_solution_certified"));

    let out = run(&["hw", "--config", cfg, "--q-const", "1"]);
    let v = json(&out);
    assert!((v["lhs"].as_f64().unwrap() - 0.20060).abs() < 1e-5);

    let crit = json(&run(&["critical", "--config", cfg, "--n", "128"]));
    let lambda = crit["lambda_star"].as_f64().unwrap();
    let out = run(&["hw", "--config", cfg, "--q-const", &format!("{lambda:e}")]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["verdict"].as_str(), Some("necessary_condition_holds"));
}

#[test]
fn critical_is_deterministic_and_refines() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", &RL_CONFIG.replace("\"eta\":0.3", "\"eta\":0"));
    let cfg = cfg.to_str().unwrap();
    let a = run(&["critical", "--config", cfg, "--n", "64"]);
    let b = run(&["critical", "--config", cfg, "--n", "64"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["critical", "--config", cfg, "--n", "128"]);
    let l64 = json(&a)["lambda_star"].as_f64().unwrap();
    let l128 = json(&c)["lambda_star"].as_f64().unwrap();
    assert!(l64 > 0.0);
    assert!(rel(l64, l128) < 1e-3, "{l64} vs {l128}");
    for key in ["lambda_star", "mu_max", "residual", "n"] {
        assert!(!json(&c)[key].is_null(), "{key}");
    }
}

#[test]
fn critical_matrix_export() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", RL_CONFIG);
    let m = dir.path().join("k.csv");
    let out = run(&["critical", "--config", cfg.to_str().unwrap(), "--n", "12", "--matrix-out", m.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&m).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().all(|l| l.split(',').count() == 12));
}

#[test]
fn reduce_check_passes() {
    let out = run(&["reduce-check"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["failed"].as_u64(), Some(0));
    assert!(v["total"].as_u64().unwrap() >= 10);
}
