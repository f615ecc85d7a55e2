//! Gauss rules (Legendre, Jacobi via Golub-Welsch) and an endpoint-robust tanh-sinh integrator.

use crate::special::{ln_gamma, rgamma};

/// Nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Integrate f over [a, b] with the rule (weight function ignored).
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let c = 0.5 * (a + b);
        let r = 0.5 * (b - a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + r * x);
        }
        s * r
    }
}

/// n-point Gauss-Legendre rule by Newton iteration on the three-term recurrence.
pub fn gauss_legendre(n: usize) -> GaussRule {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// n-point Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1, 1], a, b > -1.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> GaussRule {
    assert!(n >= 1 && a > -1.0 && b > -1.0);
    let ab = a + b;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        diag[k] = if k == 0 { (b - a) / (ab + 2.0) } else { (b * b - a * a) / (s * (s + 2.0)) };
        if k + 1 < n {
            let k1 = kf + 1.0;
            let s1 = 2.0 * k1 + ab;
            let beta = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + ab) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0))
            };
            off[k] = beta.sqrt();
        }
    }
    let mu0 = ((ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)).exp() * rgamma(ab + 2.0);
    let (vals, first) = symmetric_tridiagonal_eigen(diag, off);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    GaussRule {
        nodes: idx.iter().map(|&i| vals[i]).collect(),
        weights: idx.iter().map(|&i| mu0 * first[i] * first[i]).collect(),
    }
}

/// Implicit QL on a symmetric tridiagonal matrix; returns eigenvalues and the first
/// component of each normalized eigenvector.
fn symmetric_tridiagonal_eigen(mut d: Vec<f64>, mut e: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = d.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 60, "tridiagonal QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let fz = z[i + 1];
                z[i + 1] = s * z[i] + c * fz;
                z[i] = c * z[i] - s * fz;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    (d, z)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Tanh-sinh quadrature on [a, b]. The integrand receives (x, x - a, b - x) so that
/// endpoint singularities can be evaluated from the exact distances.
pub fn tanh_sinh(a: f64, b: f64, tol: f64, f: impl Fn(f64, f64, f64) -> f64) -> Integral {
    let half = 0.5 * (b - a);
    if half <= 0.0 {
        return Integral { value: 0.0, error: 0.0 };
    }
    let pi2 = std::f64::consts::FRAC_PI_2;
    let eval = |t: f64| -> f64 {
        // abscissa x = tanh(u), u = pi/2 sinh t; dist = 1 - |x| computed without cancellation
        let u = pi2 * t.sinh();
        let dist = 2.0 / (1.0 + (2.0 * u.abs()).exp());
        let ch = u.cosh();
        let w = pi2 * t.cosh() / (ch * ch);
        if dist * half == 0.0 || !w.is_finite() || w == 0.0 {
            return 0.0;
        }
        let d = dist * half;
        let (l, r) = if u >= 0.0 { (2.0 * half - d, d) } else { (d, 2.0 * half - d) };
        let x = if u >= 0.0 { b - d } else { a + d };
        w * f(x, l, r)
    };
    let tmax = 6.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= tmax {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut prev = sum * h * half;
    let mut err = f64::INFINITY;
    for _level in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= tmax {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let cur = sum * h * half;
        err = (cur - prev).abs();
        if err <= tol * cur.abs().max(1e-300) || err == 0.0 {
            return Integral { value: cur, error: err };
        }
        prev = cur;
    }
    Integral { value: prev, error: err }
}

/// Tanh-sinh over consecutive panels given by sorted break points.
pub fn tanh_sinh_panels(breaks: &[f64], tol: f64, f: impl Fn(f64, f64, f64) -> f64) -> Integral {
    let mut total = Integral { value: 0.0, error: 0.0 };
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let r = tanh_sinh(w[0], w[1], tol, &f);
            total.value += r.value;
            total.error += r.error;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    #[test]
    fn legendre_is_exact_for_polynomials() {
        let g = gauss_legendre(5);
        for k in 0..10 {
            let v = g.integrate(0.0, 1.0, |x| x.powi(k));
            assert!((v - 1.0 / (k as f64 + 1.0)).abs() < 1e-15, "k={k}");
        }
        let g32 = gauss_legendre(32);
        assert!((g32.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_moments() {
        // int (1-x)^a (1+x)^k = 2^{a+k+1} B(a+1, k+1)
        for &a in &[-0.5, 0.1, 0.5, 0.9] {
            let g = gauss_jacobi(32, a, 0.0);
            for k in 0..40 {
                let kf = k as f64;
                let exact = 2f64.powf(a + kf + 1.0) * gamma(a + 1.0) * gamma(kf + 1.0) / gamma(a + kf + 2.0);
                let v: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * (1.0 + x).powi(k)).sum();
                assert!((v - exact).abs() <= 1e-13 * exact, "a={a} k={k} {v} {exact}");
            }
        }
        let gl = gauss_jacobi(7, 0.0, 0.0);
        let l = gauss_legendre(7);
        for i in 0..7 {
            assert!((gl.nodes[i] - l.nodes[i]).abs() < 1e-14);
            assert!((gl.weights[i] - l.weights[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        let r = tanh_sinh(0.0, 1.0, 1e-14, |x, _, _| x.powf(-0.7));
        assert!((r.value - 1.0 / 0.3).abs() < 1e-11, "{}", r.value);
        let r = tanh_sinh(0.0, 1.0, 1e-14, |_, _, d| d.powf(-0.5));
        assert!((r.value - 2.0).abs() < 1e-12);
        let r = tanh_sinh_panels(&[0.0, 0.3, 1.0], 1e-14, |x, _, _| (x - 0.3).abs().sqrt());
        let exact = 2.0 / 3.0 * (0.3f64.powf(1.5) + 0.7f64.powf(1.5));
        assert!((r.value - exact).abs() < 1e-14);
    }
}
