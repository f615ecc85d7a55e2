//! Stiffness, mass and potential matrices of the Petrov-Galerkin discretization.

use crate::error::{invalid, Result};
use crate::linalg::{DMat, HessRankOneLu, Tridiag};
use crate::mesh::{gamma_coefficients, DerivKind, FracOrder, Mesh};
use crate::potential::Potential;
use crate::quadrature::{gauss_legendre, GaussRule};
use crate::special::{central_diff_pow, gamma, pow_diff};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// One eigenproblem instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub alpha: FracOrder,
    pub kind: DerivKind,
    pub potential: Potential,
    pub num_eigs: usize,
}

impl ProblemSpec {
    pub fn new(alpha: f64, kind: DerivKind, potential: Potential, num_eigs: usize) -> Result<Self> {
        if num_eigs == 0 {
            return invalid("num_eigs must be positive");
        }
        let alpha = FracOrder::new(alpha)?;
        if kind == DerivKind::Caputo && alpha.value() >= 2.0 {
            return invalid("the Caputo test space needs alpha < 2");
        }
        Ok(Self { alpha, kind, potential, num_eigs })
    }
}

fn gl5() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(5))
}

/// Fractional stiffness block A0[i][j] = -(D_0^{a/2} phi_j, D_1^{a/2} phi_i), lower Hessenberg.
pub fn stiffness_fractional_rl(mesh: &Mesh, alpha: FracOrder) -> DMat {
    let a = alpha.value();
    let m = mesh.m();
    let p = 3.0 - a;
    let g4 = gamma(4.0 - a);
    if mesh.is_uniform() {
        let h = mesh.h(1);
        let c = h.powf(1.0 - a) / g4;
        // first column (k = i - j >= 0) and the single superdiagonal value
        let col: Vec<f64> = (0..m as i64).map(|k| -c * central_diff_pow(4, k, p)).collect();
        let sup = -c * central_diff_pow(4, -1, p);
        let mut out = DMat::zeros(m, m);
        for i in 0..m {
            let row = out.row_mut(i);
            for j in 0..=i {
                row[j] = col[i - j];
            }
            if i + 1 < m {
                row[i + 1] = sup;
            }
        }
        return out;
    }
    let x = mesh.points();
    // D(a, q) = P(x_q - x_{a-1}) - P(x_q - x_a), P(d) = d_+^p
    let d = |aa: usize, q: usize| pow_diff(x[q] - x[aa - 1], x[q] - x[aa], p);
    let k = |aa: usize, q: usize| d(aa, q) - d(aa, q - 1);
    let mut out = DMat::zeros(m, m);
    let rows: Vec<Vec<f64>> = (1..=m)
        .into_par_iter()
        .map(|i| {
            let (hi, hi1) = (mesh.h(i), mesh.h(i + 1));
            (1..=m)
                .map(|j| {
                    if j > i + 1 {
                        return 0.0;
                    }
                    let (hj, hj1) = (mesh.h(j), mesh.h(j + 1));
                    (k(j, i) / (hj * hi) - k(j, i + 1) / (hj * hi1) - k(j + 1, i) / (hj1 * hi)
                        + k(j + 1, i + 1) / (hj1 * hi1))
                        / g4
                })
                .collect()
        })
        .collect();
    for (i, r) in rows.into_iter().enumerate() {
        out.row_mut(i).copy_from_slice(&r);
    }
    out
}

/// b_j = (D_0^{a/2} phi_j, D_1^{a/2}(1 - x)).
pub fn caputo_b(mesh: &Mesh, alpha: FracOrder) -> Vec<f64> {
    let a = alpha.value();
    let p = 3.0 - a;
    let g4 = gamma(4.0 - a);
    let m = mesh.m();
    if mesh.is_uniform() {
        let h = mesh.h(1);
        let c = h.powf(p - 1.0) / g4;
        return (1..=m).map(|j| c * central_diff_pow(2, (m + 1 - j) as i64, p)).collect();
    }
    let x = mesh.points();
    (1..=m)
        .map(|j| {
            let (l, c, r) = (1.0 - x[j - 1], 1.0 - x[j], 1.0 - x[j + 1]);
            (pow_diff(l, c, p) / mesh.h(j) - pow_diff(c, r, p) / mesh.h(j + 1)) / g4
        })
        .collect()
}

/// Caputo stiffness A0 + gamma b^T.
pub fn caputo_stiffness_correction(a0: &DMat, mesh: &Mesh, alpha: FracOrder) -> Result<DMat> {
    let t = gamma_coefficients(mesh, alpha)?;
    let b = caputo_b(mesh, alpha);
    let mut out = a0.clone();
    out.add_outer(&t.gamma, &b);
    Ok(out)
}

/// Gram matrix of the hat functions.
pub fn mass_rl(mesh: &Mesh) -> Tridiag {
    let m = mesh.m();
    let mut t = Tridiag::zeros(m);
    for i in 1..=m {
        t.diag[i - 1] = (mesh.h(i) + mesh.h(i + 1)) / 3.0;
        if i < m {
            t.upper[i - 1] = mesh.h(i + 1) / 6.0;
            t.lower[i - 1] = mesh.h(i + 1) / 6.0;
        }
    }
    t
}

/// c_j = (phi_j, 1 - x), exact.
pub fn caputo_c(mesh: &Mesh) -> Vec<f64> {
    let x = mesh.points();
    (1..=mesh.m())
        .map(|j| {
            0.5 * mesh.h(j) * (1.0 - (x[j - 1] + 2.0 * x[j]) / 3.0)
                + 0.5 * mesh.h(j + 1) * (1.0 - (2.0 * x[j] + x[j + 1]) / 3.0)
        })
        .collect()
}

/// Dense mass matrix: (phi_j, phi_i) or (phi_j, phi~_i).
pub fn mass_matrix(mesh: &Mesh, kind: DerivKind, alpha: FracOrder) -> Result<DMat> {
    let mut m = mass_rl(mesh).to_dense();
    if kind == DerivKind::Caputo {
        let t = gamma_coefficients(mesh, alpha)?;
        let c: Vec<f64> = caputo_c(mesh).iter().map(|v| -v).collect();
        m.add_outer(&t.gamma, &c);
    }
    Ok(m)
}

/// Subintervals of element [a, b] split at potential breakpoints.
fn element_pieces(a: f64, b: f64, breaks: &[f64]) -> Vec<(f64, f64)> {
    let mut cuts = vec![a];
    cuts.extend(breaks.iter().copied().filter(|&t| t > a && t < b));
    cuts.push(b);
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Integrals of q phi_j phi_i (tridiagonal) and q phi_j (1 - x), by 5-point Gauss per piece.
pub fn potential_parts(mesh: &Mesh, q: &Potential) -> (Tridiag, Vec<f64>) {
    let m = mesh.m();
    let mut t = Tridiag::zeros(m);
    let mut d = vec![0.0; m];
    if q.is_zero() {
        return (t, d);
    }
    let breaks = q.breakpoints();
    let rule = gl5();
    for k in 1..=m + 1 {
        let (xl, xr) = (mesh.x(k - 1), mesh.x(k));
        let h = xr - xl;
        let (mut ll, mut lr, mut rr, mut dl, mut dr) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for (a, b) in element_pieces(xl, xr, &breaks) {
            let c = 0.5 * (a + b);
            let r = 0.5 * (b - a);
            for (s, w) in rule.nodes.iter().zip(&rule.weights) {
                let x = c + r * s;
                let qv = q.eval(x) * w * r;
                let pl = (xr - x) / h;
                let pr = (x - xl) / h;
                ll += qv * pl * pl;
                lr += qv * pl * pr;
                rr += qv * pr * pr;
                dl += qv * pl * (1.0 - x);
                dr += qv * pr * (1.0 - x);
            }
        }
        // left node k-1, right node k (interior indices 1..=m)
        if k > 1 {
            t.diag[k - 2] += ll;
            d[k - 2] += dl;
        }
        if k <= m {
            t.diag[k - 1] += rr;
            d[k - 1] += dr;
        }
        if k > 1 && k <= m {
            t.upper[k - 2] += lr;
            t.lower[k - 2] += lr;
        }
    }
    (t, d)
}

/// Dense potential matrix (q phi_j, phi_i) or (q phi_j, phi~_i).
pub fn potential_matrix(mesh: &Mesh, q: &Potential, kind: DerivKind, alpha: FracOrder) -> Result<DMat> {
    let (t, d) = potential_parts(mesh, q);
    let mut out = t.to_dense();
    if kind == DerivKind::Caputo {
        let g = gamma_coefficients(mesh, alpha)?;
        let nd: Vec<f64> = d.iter().map(|v| -v).collect();
        out.add_outer(&g.gamma, &nd);
    }
    Ok(out)
}

/// Rank-one data of the Caputo test space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaputoTerms {
    pub gamma: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
}

/// Discrete pencil (A, M) with its structure kept explicit:
/// A = A0 + Q + gamma (b - d)^T and M = M_rl - gamma c^T (Caputo), or A0 + Q and M_rl (RL).
#[derive(Debug, Clone, Serialize)]
pub struct OperatorPair {
    pub kind: DerivKind,
    pub alpha: FracOrder,
    pub mesh: Mesh,
    pub potential_id: String,
    pub a0: DMat,
    /// A0 + Q (lower Hessenberg)
    pub hess: DMat,
    pub q: Tridiag,
    pub mass: Tridiag,
    pub caputo: Option<CaputoTerms>,
}

impl OperatorPair {
    pub fn m(&self) -> usize {
        self.mesh.m()
    }

    pub fn a_matrix(&self) -> DMat {
        let mut a = self.hess.clone();
        if let Some(c) = &self.caputo {
            let w: Vec<f64> = c.b.iter().zip(&c.d).map(|(b, d)| b - d).collect();
            a.add_outer(&c.gamma, &w);
        }
        a
    }

    pub fn m_matrix(&self) -> DMat {
        let mut m = self.mass.to_dense();
        if let Some(c) = &self.caputo {
            let w: Vec<f64> = c.c.iter().map(|v| -v).collect();
            m.add_outer(&c.gamma, &w);
        }
        m
    }

    pub fn a_frobenius(&self) -> f64 {
        self.a_matrix().frobenius()
    }

    /// A x
    pub fn apply_a<T: crate::linalg::Scalar>(&self, x: &[T]) -> Vec<T> {
        let mut y = self.hess.matvec(x);
        if let Some(c) = &self.caputo {
            let mut s = T::zero();
            for ((b, d), xi) in c.b.iter().zip(&c.d).zip(x) {
                s += *xi * T::from_f64(b - d);
            }
            for (yi, g) in y.iter_mut().zip(&c.gamma) {
                *yi += s * T::from_f64(*g);
            }
        }
        y
    }

    /// M x
    pub fn apply_m<T: crate::linalg::Scalar>(&self, x: &[T]) -> Vec<T> {
        let mut y = self.mass.matvec(x);
        if let Some(c) = &self.caputo {
            let mut s = T::zero();
            for (cv, xi) in c.c.iter().zip(x) {
                s += *xi * T::from_f64(*cv);
            }
            for (yi, g) in y.iter_mut().zip(&c.gamma) {
                *yi -= s * T::from_f64(*g);
            }
        }
        y
    }

    /// O(n^2) factorization of A - sigma M.
    pub fn shifted_solver<T: crate::linalg::Scalar>(&self, sigma: T) -> Result<HessRankOneLu<'_, T>> {
        match &self.caputo {
            None => HessRankOneLu::new(&self.hess, &self.mass, sigma, &[], &[]),
            Some(c) => {
                let w: Vec<T> =
                    (0..self.m()).map(|j| T::from_f64(c.b[j] - c.d[j]) + sigma * T::from_f64(c.c[j])).collect();
                HessRankOneLu::new(&self.hess, &self.mass, sigma, &c.gamma, &w)
            }
        }
    }
}

/// Assemble the discrete pencil for a problem on a mesh.
pub fn assemble(spec: &ProblemSpec, mesh: &Mesh) -> Result<OperatorPair> {
    let a0 = stiffness_fractional_rl(mesh, spec.alpha);
    let (q, d) = potential_parts(mesh, &spec.potential);
    let mut hess = a0.clone();
    for i in 0..mesh.m() {
        hess[(i, i)] += q.diag[i];
        if i + 1 < mesh.m() {
            hess[(i, i + 1)] += q.upper[i];
            hess[(i + 1, i)] += q.lower[i];
        }
    }
    let caputo = match spec.kind {
        DerivKind::RiemannLiouville => None,
        DerivKind::Caputo => Some(CaputoTerms {
            gamma: gamma_coefficients(mesh, spec.alpha)?.gamma,
            b: caputo_b(mesh, spec.alpha),
            c: caputo_c(mesh),
            d,
        }),
    };
    Ok(OperatorPair {
        kind: spec.kind,
        alpha: spec.alpha,
        mesh: mesh.clone(),
        potential_id: spec.potential.id(),
        a0,
        hess,
        q,
        mass: mass_rl(mesh),
        caputo,
    })
}

/// Load vector (f, phi_i) or (f, phi~_i) by 5-point Gauss per element, split at `breaks`.
pub fn load_vector(pair: &OperatorPair, f: &dyn Fn(f64) -> f64, breaks: &[f64]) -> Vec<f64> {
    let mesh = &pair.mesh;
    let m = mesh.m();
    let rule = gl5();
    let mut load = vec![0.0; m];
    let mut moment = 0.0;
    for k in 1..=m + 1 {
        let (xl, xr) = (mesh.x(k - 1), mesh.x(k));
        let h = xr - xl;
        for (a, b) in element_pieces(xl, xr, breaks) {
            let c = 0.5 * (a + b);
            let r = 0.5 * (b - a);
            for (s, w) in rule.nodes.iter().zip(&rule.weights) {
                let x = c + r * s;
                let fv = f(x) * w * r;
                if k >= 2 {
                    load[k - 2] += fv * (xr - x) / h;
                }
                if k <= m {
                    load[k - 1] += fv * (x - xl) / h;
                }
                moment += fv * (1.0 - x);
            }
        }
    }
    if let Some(c) = &pair.caputo {
        for (l, g) in load.iter_mut().zip(&c.gamma) {
            *l -= g * moment;
        }
    }
    load
}

/// Finite element solution of -D^alpha u + q u = f with homogeneous Dirichlet data (interior nodal values).
pub fn fem_source_solve(pair: &OperatorPair, f: &dyn Fn(f64) -> f64, breaks: &[f64]) -> Result<Vec<f64>> {
    let rhs = load_vector(pair, f, breaks);
    let solver = pair.shifted_solver(0.0f64)?;
    Ok(solver.solve(&rhs))
}
