//! Convergence tables, Richardson references, eigenvalue tracking across meshes and
//! orders, and bifurcation scans.

use crate::assembly::{assemble, OperatorPair, ProblemSpec};
use crate::eig::{arnoldi_smallest, dense_generalized, is_real, ArnoldiOptions, PairTag, Spectrum};
use crate::error::{invalid, FslpError, Result};
use crate::mesh::{make_mesh, DerivKind, FracOrder};
use crate::mittag_leffler::{ml_zero_refine, MlParams};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Meshes up to this many interior nodes go through the dense QR path.
pub const DENSE_LIMIT: usize = 320;
/// Candidates closer than this make a nearest-neighbour pairing ambiguous.
pub const MATCH_TOL: f64 = 1e-6;
/// Bisection lattice for bifurcation brackets (points per unit of alpha).
pub const ALPHA_LATTICE: f64 = 1e4;
const MAX_BISECT: usize = 14;
const EXTRA_EIGS: usize = 4;

/// Interior node count of level k (mesh size 1/(10 2^k)).
pub fn level_m(k: u32) -> usize {
    10 * (1usize << k) - 1
}

/// Drop everything past the first `n` eigenvalues without splitting a conjugate pair.
pub fn truncate_whole(s: &mut Spectrum, n: usize) {
    let mut n = n.min(s.len());
    if n > 0 && n < s.len() && s.pair_tags[n - 1] == PairTag::Upper {
        n += 1;
    }
    s.truncate(n);
}

/// The smallest `nev` eigenvalues of an assembled pencil: dense QR for small meshes
/// (or when forced), structured Arnoldi otherwise.
pub fn solve_pair(pair: &OperatorPair, nev: usize, force_dense: bool) -> Result<Spectrum> {
    let m = pair.m();
    let nev = nev.min(m);
    let mut s = if force_dense || m <= DENSE_LIMIT {
        dense_generalized(&pair.a_matrix(), &pair.m_matrix())?
    } else {
        arnoldi_smallest(pair, nev + 1, ArnoldiOptions::default())?
    };
    truncate_whole(&mut s, nev);
    Ok(s)
}

/// The smallest `nev` eigenvalues of the pencil on a uniform mesh with m interior nodes.
pub fn compute_spectrum(spec: &ProblemSpec, m: usize, nev: usize) -> Result<Spectrum> {
    let pair = assemble(spec, &make_mesh(m, None)?)?;
    solve_pair(&pair, nev, false)
}

/// Result of a nearest-neighbour pairing: (source index, target index) sorted by source.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub max_distance: f64,
}

impl Matching {
    pub fn target_of(&self, i: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == i).map(|p| p.1)
    }
}

/// Greedy nearest pairing in the complex plane; each target is used at most once.
pub fn match_eigenvalues(prev: &[Complex64], next: &[Complex64]) -> Result<Matching> {
    if prev.is_empty() || next.is_empty() {
        return invalid("cannot match an empty spectrum");
    }
    let mut cand: Vec<(f64, usize, usize)> = Vec::with_capacity(prev.len() * next.len());
    for (i, a) in prev.iter().enumerate() {
        for (j, b) in next.iter().enumerate() {
            cand.push(((a - b).norm(), i, j));
        }
    }
    cand.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut used_src = vec![false; prev.len()];
    let mut used_dst = vec![false; next.len()];
    let mut pairs = Vec::new();
    let mut max_distance: f64 = 0.0;
    for (d, i, j) in cand {
        if used_src[i] || used_dst[j] {
            continue;
        }
        if let Some(k) = (0..next.len()).find(|&k| k != j && !used_dst[k] && (next[k] - next[j]).norm() <= MATCH_TOL) {
            return Err(FslpError::MatchingAmbiguous(format!("{}", prev[i]), format!("{} / {}", next[j], next[k])));
        }
        used_src[i] = true;
        used_dst[j] = true;
        max_distance = max_distance.max(d);
        pairs.push((i, j));
    }
    pairs.sort();
    Ok(Matching { pairs, max_distance })
}

/// Extrapolate matched fine/coarse representatives assuming second-order convergence.
pub fn richardson(fine: &[Complex64], coarse: &[Complex64]) -> Result<Vec<Complex64>> {
    let mt = match_eigenvalues(fine, coarse)?;
    fine.iter()
        .enumerate()
        .map(|(i, f)| {
            let j = mt.target_of(i).ok_or_else(|| FslpError::InvalidInput(format!("no coarse partner for {f}")))?;
            let mut r = f + (f - coarse[j]) / 3.0;
            if is_real(*f) {
                r.im = 0.0;
            }
            Ok(r)
        })
        .collect()
}

fn coarse_of(m_fine: usize) -> Result<usize> {
    if m_fine < 639 || !(m_fine + 1).is_multiple_of(2) {
        return invalid(format!("reference mesh needs an even number of intervals and m >= 639, got m = {m_fine}"));
    }
    Ok((m_fine - 1) / 2)
}

/// Richardson reference values (representatives of the first `num_eigs` eigenvalues)
/// from meshes with m_fine and (m_fine + 1)/2 - 1 interior nodes.
pub fn reference_eigenvalues(spec: &ProblemSpec, m_fine: usize) -> Result<Vec<Complex64>> {
    let m_coarse = coarse_of(m_fine)?;
    let fine = compute_spectrum(spec, m_fine, spec.num_eigs)?;
    let coarse = compute_spectrum(spec, m_coarse, spec.num_eigs + EXTRA_EIGS)?;
    richardson(&fine.representatives(), &coarse.representatives())
}

/// Row labels for representatives: "λ1", "λ3,4" for conjugate pairs.
pub fn eigen_labels(reps: &[Complex64]) -> Vec<String> {
    let mut n = 1;
    reps.iter()
        .map(|z| {
            if is_real(*z) {
                n += 1;
                format!("λ{}", n - 1)
            } else {
                n += 2;
                format!("λ{},{}", n - 2, n - 1)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceTable {
    pub kind: DerivKind,
    pub alpha: f64,
    pub potential: String,
    pub levels: Vec<u32>,
    pub meshes: Vec<usize>,
    pub labels: Vec<String>,
    pub reference: Vec<Complex64>,
    /// errors[row][level]
    pub errors: Vec<Vec<f64>>,
    pub rates: Vec<Option<f64>>,
    /// Real classification of each tracked eigenvalue at the finest level.
    pub real_at_finest: Vec<bool>,
}

/// log2(e_coarse / e_fine), defined when both errors exceed 1e-14.
pub fn pair_rate(e_coarse: f64, e_fine: f64) -> Option<f64> {
    (e_coarse > 1e-14 && e_fine > 1e-14).then(|| (e_coarse / e_fine).log2())
}

impl ConvergenceTable {
    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["eigenvalue".to_string()];
        h.extend(self.levels.iter().map(|k| format!("k={k}")));
        h.push("rate".into());
        h
    }

    /// Table rows with values rendered by `fmt`; undefined rates are empty cells.
    pub fn rows(&self, fmt: impl Fn(f64) -> String) -> Vec<Vec<String>> {
        self.labels
            .iter()
            .zip(&self.errors)
            .zip(&self.rates)
            .map(|((l, e), r)| {
                let mut row = vec![l.clone()];
                row.extend(e.iter().map(|&x| fmt(x)));
                row.push(r.map(&fmt).unwrap_or_default());
                row
            })
            .collect()
    }
}

/// Errors of the first `num_eigs` eigenvalues at levels `ks` against a Richardson
/// reference on `m_fine`, with finest-pair rates.
pub fn convergence_study(spec: &ProblemSpec, ks: &[u32], m_fine: usize) -> Result<ConvergenceTable> {
    if ks.is_empty() {
        return invalid("empty level range");
    }
    let coarsest = ks.iter().map(|&k| level_m(k)).min().unwrap();
    if spec.num_eigs > coarsest {
        return invalid(format!("num_eigs {} exceeds the coarsest mesh size {coarsest}", spec.num_eigs));
    }
    let m_coarse = coarse_of(m_fine)?;
    let mut jobs: Vec<(usize, usize)> = ks.iter().map(|&k| (level_m(k), spec.num_eigs + EXTRA_EIGS)).collect();
    jobs.push((m_fine, spec.num_eigs));
    jobs.push((m_coarse, spec.num_eigs + EXTRA_EIGS));
    let spectra: Vec<Spectrum> =
        jobs.par_iter().map(|&(m, nev)| compute_spectrum(spec, m, nev)).collect::<Result<_>>()?;
    let nl = ks.len();
    let reference = richardson(&spectra[nl].representatives(), &spectra[nl + 1].representatives())?;
    let mut errors = vec![vec![0.0; nl]; reference.len()];
    let mut real_at_finest = vec![false; reference.len()];
    for (l, s) in spectra[..nl].iter().enumerate() {
        let reps = s.representatives();
        let mt = match_eigenvalues(&reference, &reps)?;
        for (i, r) in reference.iter().enumerate() {
            let j = mt.target_of(i).ok_or_else(|| FslpError::InvalidInput(format!("level {} lost {r}", ks[l])))?;
            errors[i][l] = (r - reps[j]).norm();
            if l == nl - 1 {
                real_at_finest[i] = is_real(reps[j]);
            }
        }
    }
    let rates = errors.iter().map(|e| if nl >= 2 { pair_rate(e[nl - 2], e[nl - 1]) } else { None }).collect();
    Ok(ConvergenceTable {
        kind: spec.kind,
        alpha: spec.alpha.value(),
        potential: spec.potential.id(),
        levels: ks.to_vec(),
        meshes: ks.iter().map(|&k| level_m(k)).collect(),
        labels: eigen_labels(&reference),
        reference,
        errors,
        rates,
        real_at_finest,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanPoint {
    pub alpha: f64,
    pub eigenvalues: Vec<Complex64>,
    pub real_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationReport {
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    /// The conjugate pair (upper member) on the complex side of the bracket.
    pub pair_before: Complex64,
    /// The two real eigenvalues on the other side.
    pub reals_after: [f64; 2],
    /// Whether the complex side is alpha_lo (pair splits as alpha increases).
    pub complex_below: bool,
    pub resolution: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub m: usize,
    pub points: Vec<ScanPoint>,
    pub bifurcations: Vec<BifurcationReport>,
    /// Orders where the number of real eigenvalues dropped from the previous grid point.
    pub monotonicity_violations: Vec<f64>,
}

fn spec_at(template: &ProblemSpec, alpha: f64) -> Result<ProblemSpec> {
    ProblemSpec::new(alpha, template.kind, template.potential.clone(), template.num_eigs)
}

fn reps_at(template: &ProblemSpec, alpha: f64, m: usize) -> Result<Vec<Complex64>> {
    Ok(compute_spectrum(&spec_at(template, alpha)?, m, template.num_eigs + EXTRA_EIGS)?.representatives())
}

fn nearest_two(reps: &[Complex64], z: Complex64) -> Vec<Complex64> {
    let mut v = reps.to_vec();
    v.sort_by(|a, b| (a - z).norm().total_cmp(&(b - z).norm()));
    v.truncate(2);
    v
}

fn split_to_reals(reps: &[Complex64], z: Complex64) -> Option<[f64; 2]> {
    let two = nearest_two(reps, z);
    if two.len() == 2 && two.iter().all(|w| is_real(*w)) {
        let (a, b) = (two[0].re.min(two[1].re), two[0].re.max(two[1].re));
        Some([a, b])
    } else {
        None
    }
}

fn pair_near(reps: &[Complex64], z: Complex64, radius: f64) -> Option<Complex64> {
    reps.iter()
        .copied()
        .filter(|u| !is_real(*u) && u.im > 0.0 && (u - z).norm() <= radius)
        .min_by(|a, b| (a - z).norm().total_cmp(&(b - z).norm()))
}

/// Refine a bracket [lo, hi] (complex pair on one side, two reals on the other) by
/// bisection on the alpha lattice.
fn bisect_bifurcation(
    template: &ProblemSpec,
    m: usize,
    lo: f64,
    hi: f64,
    z: Complex64,
    reals: [f64; 2],
    complex_below: bool,
) -> Result<BifurcationReport> {
    let mut a = (lo * ALPHA_LATTICE).round() as i64;
    let mut b = (hi * ALPHA_LATTICE).round() as i64;
    let mut pair = z;
    let mut split = reals;
    let mut depth = 0;
    while b - a > 1 && depth < MAX_BISECT {
        depth += 1;
        let mid = (a + b) / 2;
        let reps = reps_at(template, mid as f64 / ALPHA_LATTICE, m)?;
        let radius = 2.0 * (pair.im.abs() + (pair - Complex64::new(0.5 * (split[0] + split[1]), 0.0)).norm()) + 1e-3;
        match pair_near(&reps, pair, radius) {
            Some(p) => {
                pair = p;
                if complex_below {
                    a = mid
                } else {
                    b = mid
                }
            }
            None => {
                if let Some(r) = split_to_reals(&reps, pair) {
                    split = r;
                }
                if complex_below {
                    b = mid
                } else {
                    a = mid
                }
            }
        }
    }
    Ok(BifurcationReport {
        alpha_lo: a as f64 / ALPHA_LATTICE,
        alpha_hi: b as f64 / ALPHA_LATTICE,
        pair_before: pair,
        reals_after: split,
        complex_below,
        resolution: m,
    })
}

fn real_count(s: &[Complex64], n: usize) -> usize {
    s.iter().take(n).filter(|z| is_real(**z)).count()
}

/// Track the spectrum along an increasing grid of orders, locating pair/real transitions.
pub fn scan_alpha(template: &ProblemSpec, grid: &[f64], m: usize) -> Result<ScanResult> {
    if grid.len() < 2 {
        return invalid("scan grid needs at least two points");
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return invalid("scan grid must be strictly increasing");
    }
    for &a in grid {
        FracOrder::new(a)?;
        if !(a < 2.0) {
            return invalid("scan grid must lie inside (1, 2)");
        }
    }
    let n = template.num_eigs;
    let spectra: Vec<Spectrum> =
        grid.par_iter().map(|&a| compute_spectrum(&spec_at(template, a)?, m, n + EXTRA_EIGS)).collect::<Result<_>>()?;
    let points: Vec<ScanPoint> = grid
        .iter()
        .zip(&spectra)
        .map(|(&alpha, s)| ScanPoint {
            alpha,
            eigenvalues: s.eigenvalues.clone(),
            real_count: real_count(&s.eigenvalues, n),
        })
        .collect();
    let reps: Vec<Vec<Complex64>> = spectra.iter().map(|s| s.representatives()).collect();
    let tracked = |i: usize| -> usize {
        let mut count = 0;
        let mut k = 0;
        for z in &reps[i] {
            if count >= n {
                break;
            }
            count += if is_real(*z) { 1 } else { 2 };
            k += 1;
        }
        k
    };

    let mut brackets = Vec::new();
    let mut steps = Vec::new();
    for t in 0..grid.len() - 1 {
        let (lo, hi) = (&reps[t], &reps[t + 1]);
        let fwd = match_eigenvalues(&lo[..tracked(t)], hi)?;
        let mut in_split = false;
        for &(i, j) in &fwd.pairs {
            if !is_real(lo[i]) && is_real(hi[j]) {
                if let Some(r) = split_to_reals(hi, lo[i]) {
                    brackets.push((t, lo[i], r, true));
                    in_split = true;
                }
            }
        }
        let bwd = match_eigenvalues(&hi[..tracked(t + 1)], lo)?;
        for &(j, i) in &bwd.pairs {
            if !is_real(hi[j]) && is_real(lo[i]) {
                if let Some(r) = split_to_reals(lo, hi[j]) {
                    brackets.push((t, hi[j], r, false));
                    in_split = true;
                }
            }
        }
        steps.push((fwd, in_split));
    }

    // continuity check on type-preserving matches away from transitions
    let rel = |t: usize, i: usize, j: usize| (reps[t][i] - reps[t + 1][j]).norm() / (1.0 + reps[t][i].norm());
    let near_split = |t: usize| steps[t.saturating_sub(2)..(t + 3).min(steps.len())].iter().any(|s| s.1);
    let mut motions = Vec::new();
    for (t, (mt, _)) in steps.iter().enumerate() {
        if near_split(t) {
            continue;
        }
        for &(i, j) in &mt.pairs {
            if is_real(reps[t][i]) == is_real(reps[t + 1][j]) {
                motions.push(rel(t, i, j));
            }
        }
    }
    if !motions.is_empty() {
        motions.sort_by(f64::total_cmp);
        let median = motions[motions.len() / 2].max(1e-12);
        for (t, (mt, _)) in steps.iter().enumerate() {
            if near_split(t) {
                continue;
            }
            for &(i, j) in &mt.pairs {
                let d = rel(t, i, j);
                if is_real(reps[t][i]) == is_real(reps[t + 1][j]) && d > 10.0 * median {
                    return Err(FslpError::TrackingLost { alpha: grid[t + 1], jump: d, limit: 10.0 * median });
                }
            }
        }
    }

    let mut monotonicity_violations = Vec::new();
    for w in points.windows(2) {
        if w[1].real_count < w[0].real_count {
            log::warn!(
                "real eigenvalue count drops from {} to {} between alpha {} and {}",
                w[0].real_count,
                w[1].real_count,
                w[0].alpha,
                w[1].alpha
            );
            monotonicity_violations.push(w[1].alpha);
        }
    }

    let bifurcations = brackets
        .into_iter()
        .map(|(t, z, r, below)| bisect_bifurcation(template, m, grid[t], grid[t + 1], z, r, below))
        .collect::<Result<_>>()?;
    Ok(ScanResult { m, points, bifurcations, monotonicity_violations })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Minimum {
    pub alpha: f64,
    pub value: f64,
}

/// Minimiser of the first eigenvalue along a scan, from a parabola through the
/// smallest grid value and its neighbours. None when the minimum sits on the boundary.
pub fn lambda1_minimum(points: &[ScanPoint]) -> Option<Minimum> {
    let v: Vec<f64> = points.iter().map(|p| p.eigenvalues.first().map_or(f64::NAN, |z| z.re)).collect();
    let k = (0..v.len()).min_by(|&a, &b| v[a].total_cmp(&v[b]))?;
    if k == 0 || k + 1 == v.len() {
        return None;
    }
    let (x0, x1, x2) = (points[k - 1].alpha, points[k].alpha, points[k + 1].alpha);
    let (y0, y1, y2) = (v[k - 1], v[k], v[k + 1]);
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let c = (d12 - d01) / (x2 - x0);
    if !(c > 0.0) {
        return Some(Minimum { alpha: x1, value: y1 });
    }
    let b = d01 - c * (x0 + x1);
    let xm = -b / (2.0 * c);
    let value = y0 + d01 * (xm - x0) + c * (xm - x0) * (xm - x1);
    Some(Minimum { alpha: xm, value })
}

/// Parameters of the Mittag-Leffler function whose zeros are the q = 0 eigenvalues.
pub fn ml_params_for(kind: DerivKind, alpha: f64) -> Result<MlParams> {
    match kind {
        DerivKind::Caputo => MlParams::new(alpha, 2.0),
        DerivKind::RiemannLiouville => MlParams::new(alpha, alpha),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MlCheck {
    pub index: usize,
    pub lambda_ml: Complex64,
    pub meshes: Vec<usize>,
    pub errors: Vec<f64>,
    /// Least-squares slope of log error against log h.
    pub exponent: f64,
}

/// Least-squares slope of log y against log x.
pub fn fitted_exponent(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Compare q = 0 finite element eigenvalues with Newton-refined Mittag-Leffler zeros
/// seeded from the finest mesh; covers the representatives of the first `count` eigenvalues.
pub fn ml_cross_validation(kind: DerivKind, alpha: f64, ms: &[usize], count: usize) -> Result<Vec<MlCheck>> {
    if ms.len() < 2 {
        return invalid("need at least two meshes");
    }
    let spec = ProblemSpec::new(alpha, kind, crate::potential::Potential::Zero, count)?;
    let p = ml_params_for(kind, alpha)?;
    let spectra: Vec<Spectrum> =
        ms.par_iter().map(|&m| compute_spectrum(&spec, m, count + EXTRA_EIGS)).collect::<Result<_>>()?;
    let finest = ms.iter().enumerate().max_by_key(|(_, m)| **m).map(|(i, _)| i).unwrap();
    let mut seeds = spectra[finest].clone();
    truncate_whole(&mut seeds, count);
    let zeros: Vec<Complex64> = seeds.representatives().iter().map(|&s| ml_zero_refine(p, s)).collect::<Result<_>>()?;
    let mut out: Vec<MlCheck> = zeros
        .iter()
        .enumerate()
        .map(|(i, &z)| MlCheck { index: i, lambda_ml: z, meshes: ms.to_vec(), errors: Vec::new(), exponent: f64::NAN })
        .collect();
    for s in &spectra {
        let reps = s.representatives();
        let mt = match_eigenvalues(&zeros, &reps)?;
        for (i, c) in out.iter_mut().enumerate() {
            let j = mt.target_of(i).ok_or_else(|| FslpError::InvalidInput("unmatched zero".into()))?;
            c.errors.push((zeros[i] - reps[j]).norm());
        }
    }
    let hs: Vec<f64> = ms.iter().map(|&m| 1.0 / (m as f64 + 1.0)).collect();
    for c in out.iter_mut() {
        c.exponent = fitted_exponent(&hs, &c.errors);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn matching_examples() {
        let a = [c(1.0), c(2.0), Complex64::new(3.0, 1.0)];
        let m = match_eigenvalues(&a, &a).unwrap();
        assert_eq!(m.pairs, vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(m.max_distance, 0.0);
        let b: Vec<Complex64> = a.iter().map(|z| z + 1e-6).collect();
        assert_eq!(match_eigenvalues(&a, &b).unwrap().pairs, vec![(0, 0), (1, 1), (2, 2)]);
        let m = match_eigenvalues(&[c(1.0), c(2.0)], &[c(2.05), c(0.95)]).unwrap();
        assert_eq!(m.pairs, vec![(0, 1), (1, 0)]);
        assert!(matches!(
            match_eigenvalues(&[c(1.0)], &[c(1.1), c(1.1 + 5e-7)]),
            Err(FslpError::MatchingAmbiguous(..))
        ));
    }

    #[test]
    fn labels() {
        let l = eigen_labels(&[c(1.0), c(2.0), Complex64::new(3.0, 1.0), c(4.0)]);
        assert_eq!(l, vec!["λ1", "λ2", "λ3,4", "λ5"]);
    }

    #[test]
    fn parabola_minimum() {
        let pts: Vec<ScanPoint> = [1.0, 1.1, 1.2, 1.3]
            .iter()
            .map(|&a: &f64| ScanPoint { alpha: a, eigenvalues: vec![c((a - 1.17).powi(2) + 5.0)], real_count: 1 })
            .collect();
        let m = lambda1_minimum(&pts).unwrap();
        assert!((m.alpha - 1.17).abs() < 1e-12 && (m.value - 5.0).abs() < 1e-12);
    }
}
