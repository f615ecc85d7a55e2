use super::dense::{DMat, Scalar, Tridiag};
use crate::error::{FslpError, Result};

/// O(n^2) solver for (H - sigma M + u w^T) x = r where H is lower Hessenberg and M tridiagonal.
///
/// The transpose G = (H - sigma M)^T is upper Hessenberg; its LU with adjacent-row pivoting
/// costs O(n^2). The rank-one term is handled by Sherman-Morrison.
pub struct HessRankOneLu<'a, T: Scalar> {
    n: usize,
    h: &'a DMat,
    mass: &'a Tridiag,
    sigma: T,
    u: Vec<f64>,
    w: Vec<T>,
    // U stored row-major (upper part), multipliers and pivot flags of the elimination.
    g: Vec<T>,
    mult: Vec<T>,
    swapped: Vec<bool>,
    zu: Vec<T>,
    denom: T,
}

impl<'a, T: Scalar> HessRankOneLu<'a, T> {
    /// `u`/`w` may be empty for a pure Hessenberg shift.
    pub fn new(h: &'a DMat, mass: &'a Tridiag, sigma: T, u: &[f64], w: &[T]) -> Result<Self> {
        let n = h.nrows();
        let mut g = vec![T::zero(); n * n];
        for i in 0..n {
            let hrow = h.row(i);
            // column i of G = row i of H
            let jmax = (i + 1).min(n - 1);
            for j in 0..=jmax {
                g[j * n + i] = T::from_f64(hrow[j]);
            }
            for j in i.saturating_sub(1)..=(i + 1).min(n - 1) {
                let mv = mass.get(i, j);
                if mv != 0.0 {
                    g[j * n + i] -= sigma * T::from_f64(mv);
                }
            }
        }
        let mut mult = vec![T::zero(); n.saturating_sub(1)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for k in 0..n.saturating_sub(1) {
            let (top, bottom) = g.split_at_mut((k + 1) * n);
            let rk = &mut top[k * n..];
            let rk1 = &mut bottom[..n];
            if rk1[k].abs() > rk[k].abs() {
                for j in k..n {
                    std::mem::swap(&mut rk[j], &mut rk1[j]);
                }
                swapped[k] = true;
            }
            if !(rk[k].abs() >= 1e-300) {
                return Err(FslpError::SingularMatrix { column: k, pivot: rk[k].abs() });
            }
            let l = rk1[k] / rk[k];
            mult[k] = l;
            rk1[k] = T::zero();
            if l != T::zero() {
                for j in k + 1..n {
                    let v = rk[j];
                    rk1[j] -= l * v;
                }
            }
        }
        if n > 0 && !(g[n * n - 1].abs() >= 1e-300) {
            return Err(FslpError::SingularMatrix { column: n - 1, pivot: g[n * n - 1].abs() });
        }
        let mut s =
            Self { n, h, mass, sigma, u: u.to_vec(), w: w.to_vec(), g, mult, swapped, zu: Vec::new(), denom: T::one() };
        if !s.u.is_empty() {
            let uu: Vec<T> = s.u.iter().map(|&x| T::from_f64(x)).collect();
            let zu = s.hess_solve(&uu);
            let mut d = T::one();
            for (wi, zi) in s.w.iter().zip(&zu) {
                d += *wi * *zi;
            }
            if !(d.abs() >= 1e-14) {
                return Err(FslpError::SingularMatrix { column: n, pivot: d.abs() });
            }
            s.zu = zu;
            s.denom = d;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Solve (H - sigma M) x = r.
    fn hess_solve(&self, r: &[T]) -> Vec<T> {
        let n = self.n;
        let mut y = r.to_vec();
        for k in 0..n {
            let row = &self.g[k * n..(k + 1) * n];
            let yk = y[k] / row[k];
            y[k] = yk;
            for j in k + 1..n {
                y[j] -= row[j] * yk;
            }
        }
        for k in (0..n.saturating_sub(1)).rev() {
            let t = self.mult[k] * y[k + 1];
            y[k] -= t;
            if self.swapped[k] {
                y.swap(k, k + 1);
            }
        }
        y
    }

    fn solve_once(&self, r: &[T]) -> Vec<T> {
        let mut x = self.hess_solve(r);
        if !self.u.is_empty() {
            let mut wx = T::zero();
            for (wi, xi) in self.w.iter().zip(&x) {
                wx += *wi * *xi;
            }
            let c = wx / self.denom;
            for (xi, zi) in x.iter_mut().zip(&self.zu) {
                *xi -= c * *zi;
            }
        }
        x
    }

    /// y = (H - sigma M + u w^T) x
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let mut y = self.h.matvec(x);
        let mx = self.mass.matvec(x);
        for (yi, mi) in y.iter_mut().zip(&mx) {
            *yi -= self.sigma * *mi;
        }
        if !self.u.is_empty() {
            let mut wx = T::zero();
            for (wi, xi) in self.w.iter().zip(x) {
                wx += *wi * *xi;
            }
            for (yi, ui) in y.iter_mut().zip(&self.u) {
                *yi += T::from_f64(*ui) * wx;
            }
        }
        y
    }

    /// Solve with one step of iterative refinement.
    pub fn solve(&self, r: &[T]) -> Vec<T> {
        let mut x = self.solve_once(r);
        let ax = self.apply(&x);
        let res: Vec<T> = r.iter().zip(&ax).map(|(a, b)| *a - *b).collect();
        let dx = self.solve_once(&res);
        for (xi, di) in x.iter_mut().zip(&dx) {
            *xi += *di;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn sample(n: usize) -> (DMat, Tridiag, Vec<f64>, Vec<f64>) {
        let h = DMat::from_fn(n, n, |i, j| {
            if j > i + 1 {
                0.0
            } else if i == j {
                4.0 + (i as f64).sin()
            } else {
                ((i * 3 + j * 7) as f64 * 0.3).cos() / (1.0 + (i as f64 - j as f64).abs())
            }
        });
        let mut m = Tridiag::zeros(n);
        for i in 0..n {
            m.diag[i] = 0.5;
            if i + 1 < n {
                m.upper[i] = 0.1;
                m.lower[i] = 0.1;
            }
        }
        let u: Vec<f64> = (0..n).map(|i| 0.2 / (1.0 + i as f64)).collect();
        let w: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).sin()).collect();
        (h, m, u, w)
    }

    #[test]
    fn matches_dense_solve() {
        let n = 23;
        let (h, m, u, w) = sample(n);
        let sigma = Complex64::new(1.3, 0.4);
        let wc: Vec<Complex64> = w.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let f = HessRankOneLu::new(&h, &m, sigma, &u, &wc).unwrap();
        let r: Vec<Complex64> = (0..n).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let x = f.solve(&r);
        let ax = f.apply(&x);
        let err: f64 = ax.iter().zip(&r).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12, "{err}");
        // pure Hessenberg, real
        let fr = HessRankOneLu::<f64>::new(&h, &m, 0.0, &[], &[]).unwrap();
        let rr: Vec<f64> = (0..n).map(|i| 1.0 / (1.0 + i as f64)).collect();
        let xr = fr.solve(&rr);
        let back = h.matvec(&xr);
        for (a, b) in back.iter().zip(&rr) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
