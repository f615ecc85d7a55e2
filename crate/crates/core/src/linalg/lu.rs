use super::dense::{DMat, Scalar};
use crate::error::{FslpError, Result};

const TINY_PIVOT: f64 = 1e-300;

/// PA = LU with partial pivoting; L unit lower triangular stored below the diagonal.
#[derive(Debug, Clone)]
pub struct LuFactor<T: Scalar = f64> {
    n: usize,
    lu: Vec<T>,
    perm: Vec<usize>,
    swaps: usize,
}

impl LuFactor<f64> {
    pub fn new(a: &DMat) -> Result<Self> {
        assert!(a.is_square(), "LU needs a square matrix");
        Self::from_rows(a.nrows(), a.as_slice().to_vec())
    }

    pub fn determinant(&self) -> f64 {
        let d: f64 = (0..self.n).map(|i| self.lu[i * self.n + i]).product();
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Unit lower factor L.
    pub fn l(&self) -> DMat {
        DMat::from_fn(self.n, self.n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.lu[i * self.n + j],
            std::cmp::Ordering::Equal => 1.0,
            std::cmp::Ordering::Less => 0.0,
        })
    }

    pub fn u(&self) -> DMat {
        DMat::from_fn(self.n, self.n, |i, j| if j >= i { self.lu[i * self.n + j] } else { 0.0 })
    }

    /// Row permutation: row i of PA is row perm[i] of A.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }
}

impl<T: Scalar> LuFactor<T> {
    /// Factor an n x n row-major matrix.
    pub fn from_rows(n: usize, mut lu: Vec<T>) -> Result<Self> {
        assert_eq!(lu.len(), n * n);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (mut p, mut best) = (k, lu[k * n + k].abs());
            for i in k + 1..n {
                let v = lu[i * n + k].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best >= TINY_PIVOT) {
                return Err(FslpError::SingularMatrix { column: k, pivot: best });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = lu[k * n + k];
            let (top, bottom) = lu.split_at_mut((k + 1) * n);
            let krow = &top[k * n..];
            for row in bottom.chunks_mut(n) {
                let l = row[k] / pivot;
                row[k] = l;
                if l != T::zero() {
                    for j in k + 1..n {
                        let u = krow[j];
                        row[j] -= l * u;
                    }
                }
            }
        }
        Ok(Self { n, lu, perm, swaps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Solve A x = b.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let mut s = x[i];
            for (l, xv) in row.iter().zip(&x[..i]) {
                s -= *l * *xv;
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n..(i + 1) * n];
            let mut s = x[i];
            for j in i + 1..n {
                s -= row[j] * x[j];
            }
            x[i] = s / row[i];
        }
        x
    }
}
