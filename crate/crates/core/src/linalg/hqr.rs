use super::dense::DMat;
use crate::error::{FslpError, Result};
use num_complex::Complex64;

/// Orthogonal similarity to upper Hessenberg form by Householder reflections.
pub fn hessenberg_reduce(a: &mut DMat) {
    let n = a.nrows();
    assert!(a.is_square());
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let scale: f64 = (k + 1..n).map(|i| a[(i, k)].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut norm2 = 0.0;
        for i in k + 1..n {
            v[i] = a[(i, k)] / scale;
            norm2 += v[i] * v[i];
        }
        let alpha = -norm2.sqrt().copysign(v[k + 1]);
        v[k + 1] -= alpha;
        let vnorm2 = norm2 - 2.0 * alpha * (v[k + 1] + alpha) + alpha * alpha;
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // rows k+1.. : A <- (I - beta v v^T) A
        for j in k..n {
            let mut s = 0.0;
            for i in k + 1..n {
                s += v[i] * a[(i, j)];
            }
            let s = beta * s;
            for i in k + 1..n {
                a[(i, j)] -= s * v[i];
            }
        }
        // columns k+1.. : A <- A (I - beta v v^T)
        for i in 0..n {
            let row = a.row_mut(i);
            let mut s = 0.0;
            for j in k + 1..n {
                s += row[j] * v[j];
            }
            let s = beta * s;
            for j in k + 1..n {
                row[j] -= s * v[j];
            }
        }
        a[(k + 1, k)] = alpha * scale;
        for i in k + 2..n {
            a[(i, k)] = 0.0;
        }
    }
}

const MAX_ITS: usize = 40;

/// Eigenvalues of an upper Hessenberg matrix by Francis double-shift QR with deflation.
/// The input is overwritten. Order is the deflation order.
pub fn hqr_eigenvalues(a: &mut DMat) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(w);
    }
    let eps = f64::EPSILON;
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    let mut its = 0;
    while nn >= 0 {
        let nu = nn as usize;
        let mut l = nu;
        while l > 0 {
            let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
            if s == 0.0 {
                s = anorm;
            }
            if a[(l, l - 1)].abs() <= eps * s {
                a[(l, l - 1)] = 0.0;
                break;
            }
            l -= 1;
        }
        let mut x = a[(nu, nu)];
        if l == nu {
            w[nu] = Complex64::new(x + t, 0.0);
            nn -= 1;
            its = 0;
            continue;
        }
        let mut y = a[(nu - 1, nu - 1)];
        let mut ww = a[(nu, nu - 1)] * a[(nu - 1, nu)];
        if l == nu - 1 {
            let p = 0.5 * (y - x);
            let q = p * p + ww;
            let mut z = q.abs().sqrt();
            x += t;
            if q >= 0.0 {
                z = p + z.copysign(p);
                let hi = x + z;
                let lo = if z != 0.0 { x - ww / z } else { hi };
                w[nu - 1] = Complex64::new(hi, 0.0);
                w[nu] = Complex64::new(lo, 0.0);
            } else {
                w[nu - 1] = Complex64::new(x + p, z);
                w[nu] = Complex64::new(x + p, -z);
            }
            nn -= 2;
            its = 0;
            continue;
        }
        if its == MAX_ITS {
            return Err(FslpError::NoConvergence { deflated: n - 1 - nu, total: n });
        }
        if its > 0 && its % 10 == 0 {
            // exceptional shift
            t += x;
            for i in 0..=nu {
                a[(i, i)] -= x;
            }
            let s = a[(nu, nu - 1)].abs() + a[(nu - 1, nu - 2)].abs();
            x = 0.75 * s;
            y = x;
            ww = -0.4375 * s * s;
        }
        its += 1;
        let (mut p, mut q, mut r);
        let mut m = nu - 2;
        loop {
            let z = a[(m, m)];
            let rr = x - z;
            let ss = y - z;
            p = (rr * ss - ww) / a[(m + 1, m)] + a[(m, m + 1)];
            q = a[(m + 1, m + 1)] - z - rr - ss;
            r = a[(m + 2, m + 1)];
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
            let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
            if u <= eps * v {
                break;
            }
            m -= 1;
        }
        for i in m..nu - 1 {
            a[(i + 2, i)] = 0.0;
            if i != m {
                a[(i + 2, i - 1)] = 0.0;
            }
        }
        let mut xk = 0.0;
        for k in m..nu {
            if k != m {
                p = a[(k, k - 1)];
                q = a[(k + 1, k - 1)];
                r = if k + 1 != nu { a[(k + 2, k - 1)] } else { 0.0 };
                xk = p.abs() + q.abs() + r.abs();
                if xk != 0.0 {
                    p /= xk;
                    q /= xk;
                    r /= xk;
                }
            }
            let s = (p * p + q * q + r * r).sqrt().copysign(p);
            if s == 0.0 {
                continue;
            }
            if k == m {
                if l != m {
                    a[(k, k - 1)] = -a[(k, k - 1)];
                }
            } else {
                a[(k, k - 1)] = -s * xk;
            }
            p += s;
            let (hx, hy, hz) = (p / s, q / s, r / s);
            q /= p;
            r /= p;
            for j in k..=nu {
                let mut pp = a[(k, j)] + q * a[(k + 1, j)];
                if k + 1 != nu {
                    pp += r * a[(k + 2, j)];
                    a[(k + 2, j)] -= pp * hz;
                }
                a[(k + 1, j)] -= pp * hy;
                a[(k, j)] -= pp * hx;
            }
            let mmin = nu.min(k + 3);
            for i in l..=mmin {
                let mut pp = hx * a[(i, k)] + hy * a[(i, k + 1)];
                if k + 1 != nu {
                    pp += hz * a[(i, k + 2)];
                    a[(i, k + 2)] -= pp * r;
                }
                a[(i, k + 1)] -= pp * q;
                a[(i, k)] -= pp;
            }
        }
    }
    Ok(w)
}
