//! Quadrature oracles: matrix entries recomputed from their defining integrals with
//! tanh-sinh panels split at every mesh node and potential breakpoint.

use crate::mesh::{gamma_coefficients, DerivKind, FracOrder, Mesh};
use crate::potential::Potential;
use crate::quadrature::tanh_sinh_panels;
use crate::special::{pos_pow, rgamma};

const TOL: f64 = 1e-13;

fn panels(mesh: &Mesh, extra: &[f64]) -> Vec<f64> {
    let mut b: Vec<f64> = mesh.points().to_vec();
    b.extend(extra.iter().copied().filter(|t| *t > 0.0 && *t < 1.0));
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

struct Frac<'a> {
    mesh: &'a Mesh,
    /// exponent 1 - alpha/2
    e: f64,
    c: f64,
}

impl<'a> Frac<'a> {
    fn new(mesh: &'a Mesh, alpha: f64) -> Self {
        let g = alpha / 2.0;
        Self { mesh, e: 1.0 - g, c: rgamma(2.0 - g) }
    }

    /// Left fractional derivative of order alpha/2 of phi_j at x.
    fn left(&self, j: usize, x: f64) -> f64 {
        let m = self.mesh;
        let f = |a: usize| pos_pow(x - m.x(a), self.e);
        self.c * ((f(j - 1) - f(j)) / m.h(j) - (f(j) - f(j + 1)) / m.h(j + 1))
    }

    /// Right fractional integral of order 1 - alpha/2 of phi_i' at x.
    fn right(&self, i: usize, x: f64) -> f64 {
        let m = self.mesh;
        let g = |b: usize| pos_pow(m.x(b) - x, self.e);
        self.c * ((g(i) - g(i - 1)) / m.h(i) - (g(i + 1) - g(i)) / m.h(i + 1))
    }

    /// Right fractional derivative term of (1 - x), with the sign used in the test factor.
    fn right_linear(&self, x: f64) -> f64 {
        self.c * pos_pow(1.0 - x, self.e)
    }
}

/// Fractional stiffness entry -(D_0^{a/2} phi_j, D_1^{a/2} psi_i) with psi_i = phi_i (RL) or phi~_i
/// (Caputo); indices are 1-based.
pub fn stiffness_entry(mesh: &Mesh, alpha: FracOrder, kind: DerivKind, i: usize, j: usize) -> f64 {
    let a = alpha.value();
    let fr = Frac::new(mesh, a);
    let gi = match kind {
        DerivKind::Caputo => gamma_coefficients(mesh, alpha).expect("alpha < 2").gamma[i - 1],
        DerivKind::RiemannLiouville => 0.0,
    };
    tanh_sinh_panels(&panels(mesh, &[]), TOL, |x, _, _| fr.left(j, x) * (fr.right(i, x) + gi * fr.right_linear(x)))
        .value
}

/// b_j = (D_0^{a/2} phi_j, D_1^{a/2}(1 - x)) by quadrature.
pub fn caputo_b_entry(mesh: &Mesh, alpha: FracOrder, j: usize) -> f64 {
    let fr = Frac::new(mesh, alpha.value());
    tanh_sinh_panels(&panels(mesh, &[]), TOL, |x, _, _| fr.left(j, x) * fr.right_linear(x)).value
}

fn test_fn(mesh: &Mesh, gi: f64, i: usize, x: f64) -> f64 {
    mesh.hat(i, x) - gi * (1.0 - x)
}

fn gamma_i(mesh: &Mesh, alpha: FracOrder, kind: DerivKind, i: usize) -> f64 {
    match kind {
        DerivKind::Caputo => gamma_coefficients(mesh, alpha).expect("alpha < 2").gamma[i - 1],
        DerivKind::RiemannLiouville => 0.0,
    }
}

/// (phi_j, psi_i)
pub fn mass_entry(mesh: &Mesh, alpha: FracOrder, kind: DerivKind, i: usize, j: usize) -> f64 {
    let gi = gamma_i(mesh, alpha, kind, i);
    tanh_sinh_panels(&panels(mesh, &[]), TOL, |x, _, _| mesh.hat(j, x) * test_fn(mesh, gi, i, x)).value
}

/// (q phi_j, psi_i)
pub fn potential_entry(mesh: &Mesh, q: &Potential, alpha: FracOrder, kind: DerivKind, i: usize, j: usize) -> f64 {
    let gi = gamma_i(mesh, alpha, kind, i);
    let br = q.breakpoints();
    tanh_sinh_panels(&panels(mesh, &br), TOL, |x, _, _| q.eval(x) * mesh.hat(j, x) * test_fn(mesh, gi, i, x)).value
}

/// Full entry a(phi_j, psi_i) of the assembled stiffness matrix.
pub fn assembled_entry(mesh: &Mesh, q: &Potential, alpha: FracOrder, kind: DerivKind, i: usize, j: usize) -> f64 {
    stiffness_entry(mesh, alpha, kind, i, j) + potential_entry(mesh, q, alpha, kind, i, j)
}

/// (x^{1-alpha}, phi~_i) for i = 0..=m (phi~_0 = phi_0 - gamma_0 (1 - x), phi_0 the left boundary hat).
pub fn orthogonality_residual(mesh: &Mesh, alpha: FracOrder, i: usize) -> f64 {
    let t = gamma_coefficients(mesh, alpha).expect("alpha < 2");
    let a = alpha.value();
    let h1 = mesh.h(1);
    let (gi, hat): (f64, Box<dyn Fn(f64) -> f64>) = if i == 0 {
        (t.gamma0, Box::new(move |x: f64| if x < h1 { 1.0 - x / h1 } else { 0.0 }))
    } else {
        (t.gamma[i - 1], Box::new(move |x: f64| mesh.hat(i, x)))
    };
    tanh_sinh_panels(&panels(mesh, &[]), TOL, |x, _, _| pos_pow(x, 1.0 - a) * (hat(x) - gi * (1.0 - x))).value
}
