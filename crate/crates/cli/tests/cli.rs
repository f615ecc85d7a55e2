use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn fslp(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fslp")).arg("--out").arg(out).args(args).output().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn eigs(v: &Value) -> Vec<(f64, f64)> {
    let key = if v.get("zeros").is_some() { "zeros" } else { "eigenvalues" };
    v[key].as_array().unwrap().iter().map(|z| (z[0].as_f64().unwrap(), z[1].as_f64().unwrap())).collect()
}

#[test]
fn classical_limit_solve() {
    let d = tempfile::tempdir().unwrap();
    let o = fslp(d.path(), &["solve", "--alpha", "2.0", "--deriv", "rl", "--potential", "q1", "--m", "199"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let e = eigs(&json(&d.path().join("spectrum.json")));
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((e[0].0 - pi2).abs() < 1e-3 * pi2);
}

#[test]
fn rl_first_six_real() {
    let d = tempfile::tempdir().unwrap();
    let o = fslp(
        d.path(),
        &["solve", "--alpha", "1.6667", "--deriv", "rl", "--potential", "q1", "--m", "639", "--num-eigs", "6"],
    );
    assert!(o.status.success());
    let v = json(&d.path().join("spectrum.json"));
    assert_eq!(eigs(&v).len(), 6);
    assert!(v["tags"].as_array().unwrap().iter().all(|t| t == "Real"));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 6);
}

#[test]
fn caputo_ml_residuals() {
    let d = tempfile::tempdir().unwrap();
    let o = fslp(
        d.path(),
        &["solve", "--alpha", "1.3333", "--deriv", "caputo", "--potential", "q1", "--m", "639", "--num-eigs", "10"],
    );
    assert!(o.status.success());
    let v = json(&d.path().join("spectrum.json"));
    let r = v["ml_residuals"].as_array().unwrap();
    assert_eq!(r.len(), 10);
    assert!(r.iter().all(|x| x.as_f64().unwrap() <= 1e-3));
}

#[test]
fn mlzeros_residuals() {
    let d = tempfile::tempdir().unwrap();
    let o = fslp(d.path(), &["mlzeros", "--alpha", "1.3333", "--kind", "caputo", "--count", "5", "--grid", "20"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&d.path().join("ml_zeros.json"));
    assert_eq!(eigs(&v).len(), 5);
    assert!(v["residuals"].as_array().unwrap().iter().all(|x| x.as_f64().unwrap() <= 1e-12));
    let grid = std::fs::read_to_string(d.path().join("ml_grid.csv")).unwrap();
    assert_eq!(grid.lines().count(), 401);
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    for args in [
        vec!["solve", "--alpha", "2.5", "--m", "10"],
        vec!["solve", "--alpha", "1.5", "--m", "10", "--potential", "q9"],
        vec!["solve", "--alpha", "abc", "--m", "10"],
        vec!["solve", "--alpha", "2", "--deriv", "caputo", "--m", "10"],
        vec!["solve", "--alpha", "1.5", "--m", "5000", "--dense"],
        vec!["converge", "--alpha", "1.5", "--ref-m", "100"],
    ] {
        let o = fslp(d.path(), &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn fractions_match_decimals() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert!(fslp(a.path(), &["solve", "--alpha", "3/2", "--m", "39", "--num-eigs", "3"]).status.success());
    assert!(fslp(b.path(), &["solve", "--alpha", "1.5", "--m", "39", "--num-eigs", "3"]).status.success());
    let (sa, sb) = (json(&a.path().join("spectrum.json")), json(&b.path().join("spectrum.json")));
    assert_eq!(sa["eigenvalues"], sb["eigenvalues"]);
}

#[test]
fn deterministic_outputs_and_hashes() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = [
        "converge",
        "--alpha",
        "5/3",
        "--deriv",
        "caputo",
        "--k-from",
        "1",
        "--k-to",
        "3",
        "--num-eigs",
        "4",
        "--ref-m",
        "639",
    ];
    assert!(fslp(a.path(), &args).status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_fslp"))
        .env("FSLP_JOBS", "1")
        .arg("--out")
        .arg(b.path())
        .args(args)
        .output()
        .unwrap();
    assert!(o.status.success());
    for f in ["convergence.csv", "convergence.json"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let man = json(&a.path().join("converge.manifest.json"));
    let data = json(&a.path().join("convergence.json"));
    assert_eq!(man["config_hash"], data["config_hash"]);
    assert_eq!(man["config_hash"].as_str().unwrap().len(), 64);
    let csv = std::fs::read_to_string(a.path().join("convergence.csv")).unwrap();
    assert!(csv.starts_with("eigenvalue,k=1,k=2,k=3,rate\r\n"));
    assert!(csv.contains("\"λ3,4\""));
}

#[test]
fn scan_reports_split() {
    let d = tempfile::tempdir().unwrap();
    let o = fslp(d.path(), &["scan", "--from", "1.33", "--to", "1.35", "--step", "0.002", "--m", "159"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&d.path().join("scan.json"));
    let b = &v["bifurcations"][0];
    let (lo, hi) = (b["alpha_lo"].as_f64().unwrap(), b["alpha_hi"].as_f64().unwrap());
    assert!(lo < hi && hi - lo < 1.5e-4);
}

#[test]
fn user_potential_file_and_eigenfunction() {
    let d = tempfile::tempdir().unwrap();
    let q = d.path().join("q.json");
    std::fs::write(&q, r#"{"breaks": [0.0, 0.5, 1.0], "coeffs": [[1.0], [0.0, 2.0]]}"#).unwrap();
    let o = fslp(
        d.path(),
        &["eigenfunction", "--alpha", "1.5", "--deriv", "caputo", "--potential", q.to_str().unwrap(), "--m", "39"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(d.path().join("eigenfunction.csv")).unwrap();
    assert_eq!(csv.lines().count(), 42);
    std::fs::write(&q, r#"{"breaks": [0.0, 0.7, 0.5, 1.0], "coeffs": [[1.0], [1.0], [1.0]]}"#).unwrap();
    let o = fslp(d.path(), &["solve", "--alpha", "1.5", "--potential", q.to_str().unwrap(), "--m", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn assemble_dump() {
    let d = tempfile::tempdir().unwrap();
    let o = fslp(d.path(), &["assemble", "--alpha", "1.5", "--deriv", "caputo", "--m", "6", "--dump"]);
    assert!(o.status.success());
    let a = std::fs::read_to_string(d.path().join("A.csv")).unwrap();
    assert_eq!(a.lines().count(), 7);
    assert!(d.path().join("M.csv").exists() && d.path().join("assemble.manifest.json").exists());
}

#[test]
fn verify_quick_passes() {
    let d = tempfile::tempdir().unwrap();
    let o = fslp(d.path(), &["verify", "--quick"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&d.path().join("verify.json"));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}
