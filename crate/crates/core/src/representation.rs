//! Closed-form solution operators for q = 0 built on the fractional integral
//! I^a f(x) = (1/Gamma(a)) int_0^x (x - t)^{a-1} f(t) dt.

use crate::mesh::{DerivKind, FracOrder};
use crate::quadrature::{gauss_jacobi, gauss_legendre, GaussRule};
use crate::special::{pos_pow, rgamma};

/// Source term with the points where it is not smooth.
pub struct Source<'a> {
    pub f: &'a dyn Fn(f64) -> f64,
    pub breaks: Vec<f64>,
}

/// Fractional integral operator of a fixed order with its quadrature rules.
pub struct FracIntegral {
    alpha: f64,
    jacobi: GaussRule,
    legendre: GaussRule,
    scale: f64,
}

impl FracIntegral {
    pub fn new(alpha: f64) -> Self {
        Self { alpha, jacobi: gauss_jacobi(32, alpha - 1.0, 0.0), legendre: gauss_legendre(20), scale: rgamma(alpha) }
    }

    /// I^a f(x) for 0 <= x <= 1.
    pub fn eval(&self, src: &Source<'_>, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let a = self.alpha;
        let mut cuts: Vec<f64> = src.breaks.iter().copied().filter(|&b| b > 0.0 && b < x).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.insert(0, 0.0);
        let last = *cuts.last().unwrap();
        // singular panel [last, x]: weight (1 - s)^{a-1}
        let half = 0.5 * (x - last);
        let mut total = 0.0;
        let mut s = 0.0;
        for (node, w) in self.jacobi.nodes.iter().zip(&self.jacobi.weights) {
            s += w * (src.f)(last + half * (1.0 + node));
        }
        total += pos_pow(half, a) * s;
        // smooth panels, graded geometrically toward x
        for k in 0..cuts.len() - 1 {
            let (lo, hi) = (cuts[k], cuts[k + 1]);
            let mut right = hi;
            let mut width = x - hi;
            while right > lo {
                let left = (right - width).max(lo);
                if right - left <= 0.0 {
                    break;
                }
                total += self.legendre.integrate(left, right, |t| pos_pow(x - t, a - 1.0) * (src.f)(t));
                right = left;
                width *= 2.0;
            }
        }
        total * self.scale
    }
}

/// Values of the q = 0 solution u at the sample points (exactly zero at x = 0 and x = 1).
pub fn source_solve_rep(kind: DerivKind, alpha: FracOrder, src: &Source<'_>, xs: &[f64]) -> Vec<f64> {
    let a = alpha.value();
    let op = FracIntegral::new(a);
    let at_one = op.eval(src, 1.0);
    xs.iter()
        .map(|&x| {
            if x <= 0.0 || x >= 1.0 {
                return 0.0;
            }
            let ix = op.eval(src, x);
            match kind {
                DerivKind::RiemannLiouville => at_one * pos_pow(x, a - 1.0) - ix,
                DerivKind::Caputo => at_one * x - ix,
            }
        })
        .collect()
}

/// min over samples of Tf = (I^a f)(1) x^{a-1} - I^a f(x).
pub fn t_operator_positivity(alpha: FracOrder, src: &Source<'_>, xs: &[f64]) -> f64 {
    source_solve_rep(DerivKind::RiemannLiouville, alpha, src, xs).into_iter().fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    #[test]
    fn monomials() {
        let op = FracIntegral::new(1.5);
        let one = |_: f64| 1.0;
        let src = Source { f: &one, breaks: vec![] };
        for x in [0.01f64, 0.3, 0.77, 1.0] {
            let v = op.eval(&src, x);
            let e = x.powf(1.5) / gamma(2.5);
            assert!((v - e).abs() < 1e-15, "{x} {v} {e}");
        }
        let sq = |t: f64| t * t;
        let src = Source { f: &sq, breaks: vec![0.5] };
        let op = FracIntegral::new(1.2);
        for x in [0.2f64, 0.5, 0.9] {
            let e = 2.0 * x.powf(3.2) / gamma(4.2);
            assert!((op.eval(&src, x) - e).abs() < 1e-15);
        }
    }
}
