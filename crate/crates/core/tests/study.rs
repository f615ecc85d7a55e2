use fslp_core::mittag_leffler::ml_zero_refine;
use fslp_core::study::*;
use fslp_core::{Complex64, DerivKind, Potential, ProblemSpec};
use std::f64::consts::PI;

fn spec(alpha: f64, kind: DerivKind, q: &str, n: usize) -> ProblemSpec {
    ProblemSpec::new(alpha, kind, Potential::from_name(q).unwrap(), n).unwrap()
}

#[test]
fn richardson_classical_limit() {
    let r = reference_eigenvalues(&spec(2.0, DerivKind::RiemannLiouville, "q1", 1), 639).unwrap();
    assert!((r[0].re - PI * PI).abs() < 1e-6, "{}", r[0]);
}

#[test]
fn richardson_matches_mittag_leffler_zero() {
    let r = reference_eigenvalues(&spec(4.0 / 3.0, DerivKind::Caputo, "q1", 2), 1279).unwrap();
    let p = ml_params_for(DerivKind::Caputo, 4.0 / 3.0).unwrap();
    for z in r {
        let zero = ml_zero_refine(p, z).unwrap();
        assert!((zero - z).norm() < 1e-6, "{z} {zero}");
    }
}

#[test]
fn richardson_two_bracket_consistency() {
    let s = spec(5.0 / 3.0, DerivKind::RiemannLiouville, "q1", 4);
    let fine = reference_eigenvalues(&s, 2559).unwrap();
    let coarse = reference_eigenvalues(&s, 1279).unwrap();
    for (a, b) in fine.iter().zip(&coarse) {
        assert!((a - b).norm() <= 1e-5 * a.norm(), "{a} {b}");
    }
}

#[test]
fn reference_mesh_validation() {
    let s = spec(1.5, DerivKind::Caputo, "q1", 2);
    assert!(reference_eigenvalues(&s, 319).is_err());
    assert!(reference_eigenvalues(&s, 1000).is_err());
    assert!(convergence_study(&s, &[], 1279).is_err());
}

#[test]
fn classical_rate() {
    let t = convergence_study(&spec(2.0, DerivKind::RiemannLiouville, "q1", 3), &[2, 3, 4], 1279).unwrap();
    assert_eq!(t.labels, vec!["λ1", "λ2", "λ3"]);
    assert!((t.rates[0].unwrap() - 2.0).abs() <= 0.05);
    assert!((t.reference[0].re - PI * PI).abs() < 1e-6);
    assert_eq!(t.header(), vec!["eigenvalue", "k=2", "k=3", "k=4", "rate"]);
}

#[test]
fn caputo_rate_band() {
    let t = convergence_study(&spec(5.0 / 3.0, DerivKind::Caputo, "q1", 6), &[2, 3, 4], 1279).unwrap();
    for r in t.rates.iter().take(4) {
        let r = r.unwrap();
        assert!((1.8..=2.4).contains(&r), "{r}");
    }
    assert!(t.errors.iter().flatten().all(|e| *e >= 0.0));
}

#[test]
fn scan_finds_bracketed_split() {
    let s = spec(1.5, DerivKind::RiemannLiouville, "q1", 6);
    let grid: Vec<f64> = (0..=10).map(|i| 1.330 + 0.002 * i as f64).collect();
    let r = scan_alpha(&s, &grid, 159).unwrap();
    assert_eq!(r.bifurcations.len(), 1, "{:?}", r.bifurcations);
    let b = &r.bifurcations[0];
    assert!(b.alpha_lo < b.alpha_hi && b.alpha_hi - b.alpha_lo <= 1e-4 + 1e-12);
    assert!(b.pair_before.im > 0.0 && b.complex_below);
    assert!(b.reals_after[0] < b.pair_before.re && b.pair_before.re < b.reals_after[1]);
    assert!(r.monotonicity_violations.is_empty());
    for p in &r.points {
        assert!(p.eigenvalues[0].im == 0.0 && p.eigenvalues[0].re > 0.0);
    }
}

#[test]
fn scan_rejects_bad_grids() {
    let s = spec(1.5, DerivKind::RiemannLiouville, "q1", 2);
    assert!(scan_alpha(&s, &[1.4], 39).is_err());
    assert!(scan_alpha(&s, &[1.4, 1.3], 39).is_err());
    assert!(scan_alpha(&s, &[1.9, 2.0], 39).is_err());
}

#[test]
fn mittag_leffler_cross_validation_small() {
    let c = ml_cross_validation(DerivKind::RiemannLiouville, 1.5, &[79, 159, 319], 2).unwrap();
    assert!(!c.is_empty());
    for x in c {
        assert!(x.exponent >= 1.8, "{x:?}");
    }
    let z = Complex64::new(1.0, 0.0);
    assert!(match_eigenvalues(&[z], &[]).is_err());
}
