//! Generalized eigenvalues of the discrete pencil: dense QR for moderate sizes,
//! shift-invert Arnoldi on the structured solver for large ones, and inverse iteration
//! for eigenvectors.

use crate::assembly::OperatorPair;
use crate::error::{FslpError, Result};
use crate::linalg::{hessenberg_reduce, hqr_eigenvalues, DMat, LuFactor, Tridiag};
use num_complex::Complex64;
use serde::Serialize;

/// Largest dense problem accepted.
pub const DENSE_CAPACITY: usize = 4096;

/// |Im| <= 1e-8 (1 + |lambda|) counts as real.
pub fn is_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-8 * (1.0 + z.norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairTag {
    Real,
    /// member of a conjugate pair with positive imaginary part
    Upper,
    Lower,
}

/// Ordered eigenvalues with pair tags and optional eigenvectors.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub pair_tags: Vec<PairTag>,
    /// ||A v - lambda M v|| / ||v|| per value (NaN when no vector was formed)
    pub residuals: Vec<f64>,
    pub vectors: Option<Vec<Vec<Complex64>>>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Real values and upper pair members, in order.
    pub fn representatives(&self) -> Vec<Complex64> {
        self.eigenvalues.iter().zip(&self.pair_tags).filter(|(_, t)| **t != PairTag::Lower).map(|(z, _)| *z).collect()
    }

    pub fn count_real(&self) -> usize {
        self.pair_tags.iter().filter(|t| **t == PairTag::Real).count()
    }

    pub fn truncate(&mut self, n: usize) {
        self.eigenvalues.truncate(n);
        self.pair_tags.truncate(n);
        self.residuals.truncate(n);
        if let Some(v) = &mut self.vectors {
            v.truncate(n);
        }
    }
}

/// Sort by modulus (ties: larger imaginary part first) with each conjugate pair adjacent,
/// upper member first. Input must be closed under conjugation.
pub fn order_eigenvalues(vals: &[Complex64]) -> (Vec<Complex64>, Vec<PairTag>) {
    let mut reps: Vec<Complex64> = vals.iter().copied().filter(|z| is_real(*z) || z.im > 0.0).collect();
    for z in reps.iter_mut() {
        if is_real(*z) {
            z.im = 0.0;
        }
    }
    reps.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(b.im.total_cmp(&a.im)).then(a.re.total_cmp(&b.re)));
    let mut out = Vec::with_capacity(vals.len());
    let mut tags = Vec::with_capacity(vals.len());
    for z in reps {
        if z.im == 0.0 {
            out.push(z);
            tags.push(PairTag::Real);
        } else {
            out.push(z);
            tags.push(PairTag::Upper);
            out.push(z.conj());
            tags.push(PairTag::Lower);
        }
    }
    (out, tags)
}

/// C = M^{-1} A by column-wise LU solves.
pub fn reduce_generalized(a: &DMat, m: &DMat) -> Result<DMat> {
    let n = a.nrows();
    let lu = LuFactor::new(m).map_err(|_| FslpError::SingularMass)?;
    let mut c = DMat::zeros(n, n);
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| a[(i, j)]).collect();
        let x = lu.solve(&col);
        for i in 0..n {
            c[(i, j)] = x[i];
        }
    }
    Ok(c)
}

/// All eigenvalues of a dense real matrix, ordered.
pub fn eigenvalues_qr(c: &DMat) -> Result<Spectrum> {
    let n = c.nrows();
    if n > DENSE_CAPACITY {
        return Err(FslpError::Capacity(n, DENSE_CAPACITY));
    }
    let mut h = c.clone();
    hessenberg_reduce(&mut h);
    let vals = hqr_eigenvalues(&mut h)?;
    let (eigenvalues, pair_tags) = order_eigenvalues(&vals);
    Ok(Spectrum { residuals: vec![f64::NAN; eigenvalues.len()], eigenvalues, pair_tags, vectors: None })
}

/// All generalized eigenvalues of (A, M) through M^{-1} A.
pub fn dense_generalized(a: &DMat, m: &DMat) -> Result<Spectrum> {
    if a.nrows() > DENSE_CAPACITY {
        return Err(FslpError::Capacity(a.nrows(), DENSE_CAPACITY));
    }
    eigenvalues_qr(&reduce_generalized(a, m)?)
}

/// A factored shifted system x -> (A - sigma M)^{-1} x.
pub type SolveFn<'a> = Box<dyn Fn(&[Complex64]) -> Vec<Complex64> + 'a>;

/// Operations inverse iteration needs from a pencil.
pub trait Pencil {
    fn dim(&self) -> usize;
    fn apply_a_c(&self, x: &[Complex64]) -> Vec<Complex64>;
    fn apply_m_c(&self, x: &[Complex64]) -> Vec<Complex64>;
    /// Trial-space Gram matrix used for normalization.
    fn gram(&self) -> Tridiag;
    fn a_frobenius(&self) -> f64;
    /// Solver for (A - sigma M) x = r.
    fn factor(&self, sigma: Complex64) -> Result<SolveFn<'_>>;
}

impl Pencil for OperatorPair {
    fn dim(&self) -> usize {
        self.m()
    }
    fn apply_a_c(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.apply_a(x)
    }
    fn apply_m_c(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.apply_m(x)
    }
    fn gram(&self) -> Tridiag {
        self.mass.clone()
    }
    fn a_frobenius(&self) -> f64 {
        OperatorPair::a_frobenius(self)
    }
    fn factor(&self, sigma: Complex64) -> Result<SolveFn<'_>> {
        let s = self.shifted_solver(sigma)?;
        Ok(Box::new(move |r| s.solve(r)))
    }
}

/// Explicit dense pencil with a separate Gram matrix for normalization.
pub struct DensePencil<'a> {
    pub a: &'a DMat,
    pub m: &'a DMat,
    pub gram: Tridiag,
}

impl Pencil for DensePencil<'_> {
    fn dim(&self) -> usize {
        self.a.nrows()
    }
    fn apply_a_c(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.a.matvec(x)
    }
    fn apply_m_c(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.m.matvec(x)
    }
    fn gram(&self) -> Tridiag {
        self.gram.clone()
    }
    fn a_frobenius(&self) -> f64 {
        self.a.frobenius()
    }
    fn factor(&self, sigma: Complex64) -> Result<SolveFn<'_>> {
        let n = self.a.nrows();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                rows.push(Complex64::new(self.a[(i, j)], 0.0) - sigma * self.m[(i, j)]);
            }
        }
        let lu = LuFactor::from_rows(n, rows)?;
        Ok(Box::new(move |r| lu.solve(r)))
    }
}

fn norm2(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn dotc(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn scale(x: &mut [Complex64], s: Complex64) {
    for v in x.iter_mut() {
        *v *= s;
    }
}

/// Least-squares Rayleigh quotient and residual ||A x - lambda M x|| / ||x||.
fn rayleigh<P: Pencil + ?Sized>(p: &P, x: &[Complex64]) -> (Complex64, f64) {
    let ax = p.apply_a_c(x);
    let mx = p.apply_m_c(x);
    let lam = dotc(&mx, &ax) / dotc(&mx, &mx);
    let r: Vec<Complex64> = ax.iter().zip(&mx).map(|(a, m)| a - lam * m).collect();
    (lam, norm2(&r) / norm2(x))
}

fn start_vector(n: usize) -> Vec<Complex64> {
    (0..n).map(|i| Complex64::new(1.0 + 0.3 * (1.7 * i as f64).sin(), 0.0)).collect()
}

/// Normalize v^H G v = 1 and rotate so the largest-modulus entry is positive real.
pub fn normalize_eigenvector(v: &mut [Complex64], gram: &Tridiag) {
    let gv = gram.matvec(v);
    let nrm = dotc(v, &gv).re.max(0.0).sqrt();
    if nrm > 0.0 {
        scale(v, Complex64::new(1.0 / nrm, 0.0));
    }
    let big = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm()));
    if let Some(b) = big {
        if b.norm() > 0.0 {
            scale(v, b.conj() / b.norm());
        }
    }
    for z in v.iter_mut() {
        if z.im == 0.0 {
            z.im = 0.0;
        }
    }
}

/// Eigenpair from a nearby shift by complex inverse iteration with one Rayleigh-quotient
/// re-shift. Returns (lambda, normalized vector, residual).
pub fn eigenvector_inverse_iteration<P: Pencil + ?Sized>(
    p: &P,
    lambda0: Complex64,
) -> Result<(Complex64, Vec<Complex64>, f64)> {
    let n = p.dim();
    let anorm = p.a_frobenius();
    let target = 1e-13 * anorm;
    let mut sigma = lambda0;
    let factor_near = |s: Complex64| -> Result<SolveFn<'_>> {
        match p.factor(s) {
            Ok(f) => Ok(f),
            Err(FslpError::SingularMatrix { .. }) => p.factor(s * (1.0 + 1e-12) + Complex64::new(0.0, 1e-14)),
            Err(e) => Err(e),
        }
    };
    let mut solve = factor_near(sigma)?;
    let mut x = start_vector(n);
    let nx = norm2(&x);
    scale(&mut x, Complex64::new(1.0 / nx, 0.0));
    let mut best = f64::INFINITY;
    let mut best_pair = (sigma, x.clone());
    let mut since_improve = 0;
    let mut reshifted = false;
    for _ in 0..200 {
        let mx = p.apply_m_c(&x);
        let mut y = solve(&mx);
        let ny = norm2(&y);
        if !(ny.is_finite() && ny > 0.0) {
            break;
        }
        scale(&mut y, Complex64::new(1.0 / ny, 0.0));
        x = y;
        let (lam, res) = rayleigh(p, &x);
        if res < 0.5 * best {
            best = res;
            best_pair = (lam, x.clone());
            since_improve = 0;
        } else {
            since_improve += 1;
        }
        if res <= target || since_improve >= 3 {
            if reshifted {
                break;
            }
            reshifted = true;
            sigma = lam;
            solve = factor_near(sigma)?;
            since_improve = 0;
            continue;
        }
        if since_improve >= 50 {
            break;
        }
    }
    let (lam, mut v) = best_pair;
    if best > 1e-8 * anorm {
        return Err(FslpError::ShiftTooFar { re: lambda0.re, im: lambda0.im });
    }
    let (lam_final, res) = rayleigh(p, &v);
    let lam = if res <= best { lam_final } else { lam };
    normalize_eigenvector(&mut v, &p.gram());
    Ok((lam, v, best.min(res)))
}

/// Options for the structured shift-invert Arnoldi solver.
#[derive(Debug, Clone, Copy)]
pub struct ArnoldiOptions {
    pub shift: f64,
    /// Krylov dimension; 0 selects max(4 nev, 40).
    pub krylov: usize,
    /// Relative residual accepted for a Ritz pair.
    pub tol: f64,
}

impl Default for ArnoldiOptions {
    fn default() -> Self {
        Self { shift: 0.0, krylov: 0, tol: 1e-10 }
    }
}

/// The `nev` eigenvalues of smallest modulus by real shift-invert Arnoldi on the O(n^2)
/// structured solver; each value carries its Ritz residual.
pub fn arnoldi_smallest(pair: &OperatorPair, nev: usize, opts: ArnoldiOptions) -> Result<Spectrum> {
    let n = pair.m();
    let nev = nev.min(n);
    let solver = pair.shifted_solver(opts.shift)?;
    let anorm = pair.a_frobenius();
    let mut p = if opts.krylov > 0 { opts.krylov } else { (4 * nev).max(40) };
    loop {
        p = p.min(n);
        let (vals, vecs) = arnoldi_ritz(pair, &solver, p, opts.shift)?;
        // keep the nev smallest (representatives) with residuals
        let (ordered, tags) = order_eigenvalues(&vals);
        let mut spec = Spectrum {
            residuals: Vec::with_capacity(nev),
            eigenvalues: Vec::with_capacity(nev),
            pair_tags: Vec::with_capacity(nev),
            vectors: None,
        };
        let mut ok = true;
        for (z, t) in ordered.iter().zip(&tags).take(nev) {
            let key = if *t == PairTag::Lower { z.conj() } else { *z };
            let idx = vals
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - key).norm().total_cmp(&(b.1 - key).norm()))
                .map(|(i, _)| i)
                .unwrap();
            let x = &vecs[idx];
            let ax = pair.apply_a(x);
            let mx = pair.apply_m(x);
            let r: Vec<Complex64> = ax.iter().zip(&mx).map(|(a, m)| a - key * m).collect();
            let res = norm2(&r) / norm2(x);
            if !(res <= opts.tol * anorm) {
                ok = false;
            }
            spec.eigenvalues.push(*z);
            spec.pair_tags.push(*t);
            spec.residuals.push(res);
        }
        if ok || p >= n {
            if !ok {
                log::warn!("Arnoldi residual above tolerance at full Krylov dimension {p}");
            }
            return Ok(spec);
        }
        p *= 2;
    }
}

/// Ritz values (as eigenvalues of the pencil) and Ritz vectors for a p-step Arnoldi run.
fn arnoldi_ritz(
    pair: &OperatorPair,
    solver: &crate::linalg::HessRankOneLu<'_, f64>,
    p: usize,
    shift: f64,
) -> Result<(Vec<Complex64>, Vec<Vec<Complex64>>)> {
    let n = pair.m();
    let mut v: Vec<Vec<f64>> = Vec::with_capacity(p + 1);
    let mut h = DMat::zeros(p + 1, p);
    let mut v0: Vec<f64> = (0..n).map(|i| 1.0 + 0.3 * (1.7 * i as f64).sin()).collect();
    let n0 = v0.iter().map(|x| x * x).sum::<f64>().sqrt();
    v0.iter_mut().for_each(|x| *x /= n0);
    v.push(v0);
    let mut k = p;
    for j in 0..p {
        let mv = pair.apply_m(&v[j]);
        let mut w = solver.solve(&mv);
        let wnorm0 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for _pass in 0..2 {
            for (i, vi) in v.iter().enumerate() {
                let c: f64 = vi.iter().zip(&w).map(|(a, b)| a * b).sum();
                h[(i, j)] += c;
                for (wk, vk) in w.iter_mut().zip(vi) {
                    *wk -= c * vk;
                }
            }
        }
        let beta = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        h[(j + 1, j)] = beta;
        if beta <= 1e-14 * wnorm0 || j + 1 == n {
            k = j + 1;
            break;
        }
        w.iter_mut().for_each(|x| *x /= beta);
        v.push(w);
    }
    let hk = DMat::from_fn(k, k, |i, j| h[(i, j)]);
    let mut work = hk.clone();
    let theta = hqr_eigenvalues(&mut work)?;
    let mut vals = Vec::with_capacity(k);
    let mut vecs = Vec::with_capacity(k);
    for t in theta {
        let lam =
            if t.norm() > 0.0 { Complex64::new(shift, 0.0) + 1.0 / t } else { Complex64::new(f64::INFINITY, 0.0) };
        let y = small_eigvec(&hk, t);
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (yi, vi) in y.iter().zip(&v) {
            for (xk, vk) in x.iter_mut().zip(vi) {
                *xk += yi * vk;
            }
        }
        vals.push(lam);
        vecs.push(x);
    }
    Ok((vals, vecs))
}

/// Eigenvector of a small dense matrix for a known eigenvalue by inverse iteration.
fn small_eigvec(h: &DMat, theta: Complex64) -> Vec<Complex64> {
    let k = h.nrows();
    let pert = Complex64::new(1e-13 * (1.0 + theta.norm()), 1e-13 * (1.0 + theta.norm()));
    let mut rows = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let d = if i == j { theta + pert } else { Complex64::new(0.0, 0.0) };
            rows.push(Complex64::new(h[(i, j)], 0.0) - d);
        }
    }
    let mut y: Vec<Complex64> = (0..k).map(|i| Complex64::new(1.0 + 0.1 * i as f64, 0.0)).collect();
    if let Ok(lu) = LuFactor::from_rows(k, rows) {
        for _ in 0..3 {
            y = lu.solve(&y);
            let ny = norm2(&y);
            if !(ny.is_finite() && ny > 0.0) {
                break;
            }
            scale(&mut y, Complex64::new(1.0 / ny, 0.0));
        }
    }
    y
}

/// Solve a pencil: dense QR when `dense` is set (size permitting), otherwise Arnoldi.
pub fn solve_pencil(pair: &OperatorPair, nev: usize, dense: bool) -> Result<Spectrum> {
    if dense {
        let mut s = dense_generalized(&pair.a_matrix(), &pair.m_matrix())?;
        s.truncate(nev);
        Ok(s)
    } else {
        arnoldi_smallest(pair, nev, ArnoldiOptions::default())
    }
}

/// Attach refined eigenvalues, vectors and residuals (inverse iteration) to a spectrum.
/// Conjugate members reuse the conjugated vector of their upper partner.
pub fn refine_with_vectors(pair: &OperatorPair, spec: &Spectrum) -> Result<Spectrum> {
    let mut vals = Vec::with_capacity(spec.len());
    let mut vecs = Vec::with_capacity(spec.len());
    let mut res = Vec::with_capacity(spec.len());
    let mut i = 0;
    while i < spec.len() {
        let z = spec.eigenvalues[i];
        match spec.pair_tags[i] {
            PairTag::Lower => {
                // orphan lower member (truncated pair)
                let (l, v, r) = eigenvector_inverse_iteration(pair, z.conj())?;
                let mut v: Vec<Complex64> = v.iter().map(|c| c.conj()).collect();
                normalize_eigenvector(&mut v, &pair.mass);
                vals.push(l.conj());
                vecs.push(v);
                res.push(r);
            }
            tag => {
                let (l, v, r) = eigenvector_inverse_iteration(pair, z)?;
                let l = if tag == PairTag::Real { Complex64::new(l.re, 0.0) } else { l };
                vals.push(l);
                vecs.push(v.clone());
                res.push(r);
                if tag == PairTag::Upper && i + 1 < spec.len() && spec.pair_tags[i + 1] == PairTag::Lower {
                    let mut vc: Vec<Complex64> = v.iter().map(|c| c.conj()).collect();
                    normalize_eigenvector(&mut vc, &pair.mass);
                    vals.push(l.conj());
                    vecs.push(vc);
                    res.push(r);
                    i += 1;
                }
            }
        }
        i += 1;
    }
    Ok(Spectrum { eigenvalues: vals, pair_tags: spec.pair_tags.clone(), residuals: res, vectors: Some(vecs) })
}
