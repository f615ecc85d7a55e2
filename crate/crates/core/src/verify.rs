//! Self-checks against independent oracles: matrix structure, quadrature equivalence,
//! the classical limit, positivity of the solution operator, representation formulas
//! and Mittag-Leffler wells.

use crate::assembly::{assemble, fem_source_solve, ProblemSpec};
use crate::eig::{eigenvector_inverse_iteration, is_real};
use crate::error::Result;
use crate::linalg::DMat;
use crate::mesh::{make_mesh, DerivKind, FracOrder};
use crate::mittag_leffler::{log_abs_grid, ml_eval};
use crate::oracle;
use crate::potential::Potential;
use crate::representation::{source_solve_rep, t_operator_positivity, Source};
use crate::study::{compute_spectrum, ml_cross_validation, ml_params_for};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Observed worst value and the bound it is held to.
    pub value: f64,
    pub limit: f64,
    pub detail: String,
}

impl Check {
    fn upper(name: &str, value: f64, limit: f64, detail: String) -> Self {
        Self { name: name.into(), passed: value <= limit, value, limit, detail }
    }

    fn lower(name: &str, value: f64, limit: f64, detail: String) -> Self {
        Self { name: name.into(), passed: value >= limit, value, limit, detail }
    }
}

fn pair(alpha: f64, kind: DerivKind, q: Potential, m: usize) -> Result<crate::OperatorPair> {
    assemble(&ProblemSpec::new(alpha, kind, q, 1)?, &make_mesh(m, None)?)
}

fn max_minor(d: &DMat) -> f64 {
    let n = d.nrows();
    let mut w: f64 = 0.0;
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                for l in j + 1..n {
                    w = w.max((d[(i, j)] * d[(k, l)] - d[(i, l)] * d[(k, j)]).abs());
                }
            }
        }
    }
    w
}

/// Zero pattern and Toeplitz structure of the fractional block, rank one Caputo correction.
pub fn structure_checks(alphas: &[f64], m: usize) -> Result<Vec<Check>> {
    let mut zero_viol = 0usize;
    let mut toeplitz: f64 = 0.0;
    let mut minor: f64 = 0.0;
    for &a in alphas {
        let rl = pair(a, DerivKind::RiemannLiouville, Potential::Zero, m)?;
        let scale = rl.a0[(0, 0)].abs();
        for i in 0..m {
            for j in 0..m {
                if j > i + 1 && rl.a0[(i, j)] != 0.0 {
                    zero_viol += 1;
                }
                if i + 1 < m && j + 1 < m {
                    toeplitz = toeplitz.max((rl.a0[(i, j)] - rl.a0[(i + 1, j + 1)]).abs() / scale);
                }
            }
        }
        let cap = pair(a, DerivKind::Caputo, Potential::Zero, m)?;
        let mut d = cap.a_matrix();
        d.add_scaled(-1.0, &rl.a_matrix());
        let big = d.as_slice().iter().fold(0.0f64, |s, x| s.max(x.abs()));
        if big > 0.0 {
            minor = minor.max(max_minor(&d) / (big * big));
        }
    }
    Ok(vec![
        Check::upper(
            "hessenberg zero pattern",
            zero_viol as f64,
            0.0,
            format!("{zero_viol} nonzero entries above the superdiagonal"),
        ),
        Check::upper("toeplitz", toeplitz, 1e-12, "max |A0[i,j] - A0[i+1,j+1]| / |A0[0,0]|".into()),
        Check::upper("rank-one caputo correction", minor, 1e-10, "max 2x2 minor of A_caputo - A_rl, relative".into()),
    ])
}

/// Assembled stiffness and mass entries against adaptive quadrature.
pub fn quadrature_equivalence(alphas: &[f64], potentials: &[&str], m: usize) -> Result<Check> {
    let mesh = make_mesh(m, None)?;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for &a in alphas {
        let alpha = FracOrder::new(a)?;
        for kind in [DerivKind::RiemannLiouville, DerivKind::Caputo] {
            for name in potentials {
                let q = Potential::from_name(name)?;
                let p = assemble(&ProblemSpec::new(a, kind, q.clone(), 1)?, &mesh)?;
                let (am, mm) = (p.a_matrix(), p.m_matrix());
                for i in 1..=m {
                    for j in 1..=m {
                        for (v, o) in [
                            (am[(i - 1, j - 1)], oracle::assembled_entry(&mesh, &q, alpha, kind, i, j)),
                            (mm[(i - 1, j - 1)], oracle::mass_entry(&mesh, alpha, kind, i, j)),
                        ] {
                            let e = if o == 0.0 { v.abs() } else { (v - o).abs() / o.abs() };
                            worst = worst.max(e);
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(Check::upper("quadrature equivalence", worst, 1e-8, format!("{count} entries, worst relative deviation")))
}

/// alpha = 2, q = 0: first eigenpair against pi^2 and sqrt(2) sin(pi x).
pub fn classical_limit(m: usize) -> Result<Vec<Check>> {
    let p = pair(2.0, DerivKind::RiemannLiouville, Potential::Zero, m)?;
    let s = compute_spectrum(&ProblemSpec::new(2.0, DerivKind::RiemannLiouville, Potential::Zero, 1)?, m, 1)?;
    let (lam, v, _) = eigenvector_inverse_iteration(&p, s.eigenvalues[0])?;
    let rel = (lam.re - PI * PI).abs() / (PI * PI);
    let err =
        v.iter().zip(p.mesh.interior()).map(|(z, x)| (z - 2f64.sqrt() * (PI * x).sin()).norm()).fold(0.0, f64::max);
    Ok(vec![
        Check::upper("classical eigenvalue", rel, 1e-3, format!("lambda1 = {}", lam.re)),
        Check::upper("classical eigenvector", err, 1e-3, "sup-norm against sqrt(2) sin(pi x)".into()),
    ])
}

/// Random nonnegative piecewise linear function: knots and values.
pub fn random_piecewise_linear(rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let n = rng.gen_range(1..=8);
    let mut knots: Vec<f64> = (0..n).map(|_| rng.gen_range(0.02..0.98)).collect();
    knots.push(0.0);
    knots.push(1.0);
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let vals = knots.iter().map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..1.0) }).collect();
    (knots, vals)
}

fn interp(knots: &[f64], vals: &[f64], x: f64) -> f64 {
    let k = knots.partition_point(|&t| t <= x).clamp(1, knots.len() - 1);
    let (x0, x1) = (knots[k - 1], knots[k]);
    let t = ((x - x0) / (x1 - x0)).clamp(0.0, 1.0);
    vals[k - 1] * (1.0 - t) + vals[k] * t
}

/// min Tf over random nonnegative piecewise linear f and sample points.
pub fn positivity_suite(alphas: &[f64], count: usize, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<f64> = (1..200).map(|i| i as f64 / 200.0).collect();
    xs.extend([1e-6, 1e-3, 0.999, 1.0 - 1e-6]);
    let mut worst = f64::INFINITY;
    for &a in alphas {
        let alpha = FracOrder::new(a)?;
        for _ in 0..count {
            let (knots, vals) = random_piecewise_linear(&mut rng);
            let f = |x: f64| interp(&knots, &vals, x);
            let src = Source { f: &f, breaks: knots.clone() };
            let mut pts = xs.clone();
            pts.extend(knots.iter().copied().filter(|&k| k > 0.0 && k < 1.0));
            worst = worst.min(t_operator_positivity(alpha, &src, &pts));
        }
    }
    Ok(Check::lower("solution operator positivity", worst, -1e-10, format!("{} random sources per order", count)))
}

/// The smallest-modulus RL eigenvalue for q = 0 is real and positive along the grid.
pub fn first_rl_eigenvalue_positive(alphas: &[f64], m: usize) -> Result<Check> {
    let mut worst = f64::INFINITY;
    let mut bad = Vec::new();
    for &a in alphas {
        let s = compute_spectrum(&ProblemSpec::new(a, DerivKind::RiemannLiouville, Potential::Zero, 1)?, m, 1)?;
        let z = s.eigenvalues[0];
        let v = if is_real(z) { z.re } else { f64::NEG_INFINITY };
        if !(v > 0.0) {
            bad.push(a);
        }
        worst = worst.min(v);
    }
    Ok(Check {
        name: "first rl eigenvalue real positive".into(),
        passed: bad.is_empty(),
        value: worst,
        limit: 0.0,
        detail: format!("{} orders, failures at {bad:?}", alphas.len()),
    })
}

/// Finite element source solves against the closed-form representation for q = 0.
pub fn representation_crosscheck(alpha: f64, m: usize, tol: f64) -> Result<Check> {
    let mut worst: f64 = 0.0;
    let f = |x: f64| 1.0 + x * (1.0 - x);
    for kind in [DerivKind::RiemannLiouville, DerivKind::Caputo] {
        let p = pair(alpha, kind, Potential::Zero, m)?;
        let uh = fem_source_solve(&p, &f, &[])?;
        let src = Source { f: &f, breaks: vec![] };
        let u = source_solve_rep(kind, FracOrder::new(alpha)?, &src, p.mesh.interior());
        // RL nodal errors near 0 decay only like h^{alpha-1}
        let from = if kind == DerivKind::RiemannLiouville { 0.1 } else { 0.0 };
        let e = uh
            .iter()
            .zip(&u)
            .zip(p.mesh.interior())
            .filter(|(_, &x)| x >= from)
            .map(|((a, b), _)| (a - b).abs())
            .fold(0.0, f64::max);
        worst = worst.max(e);
    }
    Ok(Check::upper(
        "representation formula",
        worst,
        tol,
        format!("nodal sup-norm (rl: x >= 0.1), alpha {alpha}, m {m}"),
    ))
}

/// Each of the first zeros sits in a deep well of a log10|E| grid spanning them.
pub fn ml_grid_spot_check(kind: DerivKind, alpha: f64, n: usize) -> Result<Check> {
    let zeros: Vec<Complex64> = ml_cross_validation(kind, alpha, &[159, 319], 3)?.iter().map(|c| c.lambda_ml).collect();
    let p = ml_params_for(kind, alpha)?;
    let re_hi = zeros.iter().map(|z| z.re).fold(0.0, f64::max) * 1.25 + 1.0;
    let im_hi = zeros.iter().map(|z| z.im.abs()).fold(0.0, f64::max) * 1.25 + 1.0;
    let (re, im) = ((0.0, re_hi), (-im_hi, im_hi));
    let grid = log_abs_grid(p, re, im, n, n)?;
    let (dx, dy) = ((re.1 - re.0) / (n - 1) as f64, (im.1 - im.0) / (n - 1) as f64);
    let block_min = |cx: i64, cy: i64, r0: i64, r1: i64| {
        let mut low = f64::INFINITY;
        for iy in (cy - r1).max(0)..=(cy + r1).min(n as i64 - 1) {
            for ix in (cx - r1).max(0)..=(cx + r1).min(n as i64 - 1) {
                if (ix - cx).abs().max((iy - cy).abs()) >= r0 {
                    low = low.min(grid[iy as usize][ix as usize]);
                }
            }
        }
        low
    };
    // well depth: the ring 3..4 cells out against the cells around the zero
    let mut depth = f64::INFINITY;
    let mut resid: f64 = 0.0;
    for z in &zeros {
        resid = resid.max(ml_eval(p, -z)?.norm());
        let cx = ((z.re - re.0) / dx).round() as i64;
        let cy = ((z.im - im.0) / dy).round() as i64;
        depth = depth.min(block_min(cx, cy, 3, 4) - block_min(cx, cy, 0, 1));
    }
    let mut c = Check::lower(
        "mittag-leffler wells",
        depth,
        0.3,
        format!("{}x{} grid, {} {alpha}, max |E| at zeros {resid:.1e}", n, n, kind.short_name()),
    );
    c.passed &= resid <= 1e-10;
    Ok(c)
}

/// Full suite; `quick` trims mesh sizes for a fast smoke run.
pub fn run_suite(quick: bool) -> Result<Vec<Check>> {
    let alphas = [1.1, 1.5, 1.9];
    let mut out = structure_checks(&alphas, if quick { 24 } else { 64 })?;
    out.push(quadrature_equivalence(&alphas, &["q1", "q3"], 8)?);
    out.extend(classical_limit(199)?);
    out.push(positivity_suite(&alphas, if quick { 10 } else { 100 }, 2024)?);
    let grid: Vec<f64> = (1..=19).map(|i| 1.0 + 0.05 * i as f64).collect();
    out.push(first_rl_eigenvalue_positive(&grid, if quick { 79 } else { 159 })?);
    out.push(representation_crosscheck(1.5, if quick { 159 } else { 639 }, if quick { 2e-3 } else { 5e-4 })?);
    for kind in [DerivKind::Caputo, DerivKind::RiemannLiouville] {
        out.push(ml_grid_spot_check(kind, 4.0 / 3.0, 100)?);
    }
    Ok(out)
}
