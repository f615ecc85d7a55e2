//! Meshes of [0, 1], fractional orders and the Caputo test-space coefficients.

use crate::error::{invalid, Result};
use crate::special::pow_diff;
use serde::{Deserialize, Serialize};

/// Fractional order alpha in (1, 2]; 2 is admitted for limit checks.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha <= 2.0) {
            return invalid(format!("fractional order must lie in (1, 2], got {alpha}"));
        }
        Ok(Self(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Which fractional derivative defines the problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DerivKind {
    Caputo,
    RiemannLiouville,
}

impl DerivKind {
    pub fn short_name(self) -> &'static str {
        match self {
            DerivKind::Caputo => "caputo",
            DerivKind::RiemannLiouville => "rl",
        }
    }
}

impl std::str::FromStr for DerivKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "caputo" | "c" => Ok(DerivKind::Caputo),
            "rl" | "riemann-liouville" | "riemannliouville" => Ok(DerivKind::RiemannLiouville),
            other => Err(format!("unknown derivative kind '{other}' (expected caputo or rl)")),
        }
    }
}

/// Partition 0 = x_0 < ... < x_{m+1} = 1 with m interior nodes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mesh {
    points: Vec<f64>,
    sizes: Vec<f64>,
    uniform: bool,
}

impl Mesh {
    /// Build from explicit points including both endpoints.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 3 {
            return invalid("a mesh needs at least one interior node");
        }
        if points[0] != 0.0 || *points.last().unwrap() != 1.0 {
            return invalid("mesh must start at 0 and end at 1");
        }
        let sizes: Vec<f64> = points.windows(2).map(|w| w[1] - w[0]).collect();
        if sizes.iter().any(|&h| !(h > 0.0)) {
            return invalid("mesh points must be strictly increasing");
        }
        let hmax = sizes.iter().cloned().fold(f64::MIN, f64::max);
        let hmin = sizes.iter().cloned().fold(f64::MAX, f64::min);
        Ok(Self { points, sizes, uniform: hmax - hmin <= 1e-14 })
    }

    /// Number of interior nodes.
    pub fn m(&self) -> usize {
        self.points.len() - 2
    }

    /// x_0 ..= x_{m+1}.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn x(&self, i: usize) -> f64 {
        self.points[i]
    }

    /// h_i = x_i - x_{i-1} for i = 1..=m+1.
    pub fn h(&self, i: usize) -> f64 {
        self.sizes[i - 1]
    }

    pub fn sizes(&self) -> &[f64] {
        &self.sizes
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn max_size(&self) -> f64 {
        self.sizes.iter().cloned().fold(0.0, f64::max)
    }

    /// Interior node coordinates x_1..x_m.
    pub fn interior(&self) -> &[f64] {
        &self.points[1..self.points.len() - 1]
    }

    /// Value of hat function phi_j (1 <= j <= m) at x.
    pub fn hat(&self, j: usize, x: f64) -> f64 {
        let (l, c, r) = (self.points[j - 1], self.points[j], self.points[j + 1]);
        if x <= l || x >= r {
            0.0
        } else if x <= c {
            (x - l) / (c - l)
        } else {
            (r - x) / (r - c)
        }
    }
}

/// Mesh with m interior nodes; uniform unless a grading exponent is given
/// (x_i = (i/(m+1))^grading).
pub fn make_mesh(m: usize, grading: Option<f64>) -> Result<Mesh> {
    if m == 0 {
        return invalid("mesh needs m >= 1 interior nodes");
    }
    let n = m + 1;
    let points: Vec<f64> = match grading {
        None => (0..=n).map(|i| i as f64 / n as f64).collect(),
        Some(g) if g > 0.0 && g.is_finite() => (0..=n).map(|i| (i as f64 / n as f64).powf(g)).collect(),
        Some(g) => return invalid(format!("grading exponent must be positive, got {g}")),
    };
    let mut mesh = Mesh::from_points(points)?;
    if grading.is_none() {
        mesh.uniform = true;
    }
    Ok(mesh)
}

/// Coefficients of the Caputo test basis phi~_j = phi_j - gamma_j (1 - x).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestSpaceData {
    pub gamma0: f64,
    /// gamma_1 ..= gamma_m
    pub gamma: Vec<f64>,
}

/// Gamma coefficients enforcing (x^{1-alpha}, phi~_j) = 0.
pub fn gamma_coefficients(mesh: &Mesh, alpha: FracOrder) -> Result<TestSpaceData> {
    let a = alpha.value();
    if a >= 2.0 {
        return invalid("test-space coefficients need alpha < 2");
    }
    let p = 3.0 - a;
    let m = mesh.m();
    let gamma0 = mesh.h(1).powf(2.0 - a);
    let gamma = if mesh.is_uniform() {
        let h = mesh.h(1);
        let s = h.powf(2.0 - a);
        (1..=m).map(|i| s * crate::special::central_diff_pow(2, i as i64, p)).collect()
    } else {
        (1..=m)
            .map(|i| {
                let (xl, xc, xr) = (mesh.x(i - 1), mesh.x(i), mesh.x(i + 1));
                pow_diff(xr, xc, p) / mesh.h(i + 1) - pow_diff(xc, xl, p) / mesh.h(i)
            })
            .collect()
    };
    Ok(TestSpaceData { gamma0, gamma })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_meshes() {
        let m = make_mesh(1, None).unwrap();
        assert_eq!(m.points(), &[0.0, 0.5, 1.0]);
        let m = make_mesh(79, None).unwrap();
        assert_eq!(m.sizes().len(), 80);
        assert!(m.sizes().iter().all(|h| (h - 0.0125).abs() < 1e-15));
        assert!(make_mesh(0, None).is_err());
        assert!(Mesh::from_points(vec![0.0, 0.6, 0.5, 1.0]).is_err());
        let g = make_mesh(9, Some(2.0)).unwrap();
        assert!(!g.is_uniform());
    }

    #[test]
    fn gamma_small_case() {
        let mesh = make_mesh(1, None).unwrap();
        let t = gamma_coefficients(&mesh, FracOrder::new(1.5).unwrap()).unwrap();
        assert!((t.gamma0 - 0.5f64.sqrt()).abs() < 1e-15);
        let expect = 0.5f64.sqrt() * (2f64.powf(1.5) - 2.0);
        assert!((t.gamma[0] - expect).abs() < 1e-15);
        assert!(gamma_coefficients(&mesh, FracOrder::new(2.0).unwrap()).is_err());
    }

    #[test]
    fn uniform_formula_matches_general() {
        let alpha = FracOrder::new(1.37).unwrap();
        let mesh = make_mesh(40, None).unwrap();
        let fast = gamma_coefficients(&mesh, alpha).unwrap();
        let mut generic = mesh.clone();
        generic.uniform = false;
        let slow = gamma_coefficients(&generic, alpha).unwrap();
        for (a, b) in fast.gamma.iter().zip(&slow.gamma) {
            assert!((a - b).abs() <= 1e-13 * a.abs().max(1e-3), "{a} {b}");
        }
    }
}
