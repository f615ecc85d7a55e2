//! Two-parameter Mittag-Leffler function E_{a,b}(z), its derivative and zero refinement.
//!
//! |z| <= 12: Kahan-summed Taylor series, unless the partial sums cancel by more than three
//! digits. Otherwise: numerical inversion of the Laplace transform s^{a-b} / (s^a - z) on an
//! optimal parabolic contour plus the residues of the poles right of the contour.

use crate::error::{FslpError, Result};
use crate::special::{ln_gamma, rgamma};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Radius separating the series from the contour integral.
pub const SERIES_RADIUS: f64 = 12.0;
const MAX_TERMS: usize = 400;

/// Parameters (a, b) of E_{a,b}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    pub alpha: f64,
    pub beta: f64,
}

impl MlParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) || !beta.is_finite() {
            return Err(FslpError::InvalidInput(format!("Mittag-Leffler parameters out of range: {alpha}, {beta}")));
        }
        Ok(Self { alpha, beta })
    }
}

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: Complex64,
    comp: Complex64,
}

impl Kahan {
    fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Largest tolerated ratio sum|term| / |sum| before the series is abandoned.
const MAX_CANCELLATION: f64 = 1e3;

/// Series sum_k w_k z^k / Gamma(a k + b) with w_k = 1 (value) or k z^{-1} (derivative);
/// also returns sum |term|.
fn taylor(p: MlParams, z: Complex64, derivative: bool) -> (Complex64, f64) {
    let mut acc = Kahan::default();
    let mut abs_sum = 0.0;
    let mut prev = f64::INFINITY;
    let lnz = z.ln();
    let start = usize::from(derivative);
    let mut pw = Complex64::new(1.0, 0.0);
    for k in start..MAX_TERMS {
        let kf = k as f64;
        let x = p.alpha * kf + p.beta;
        let wk = if derivative { kf } else { 1.0 };
        let term = if pw.norm() < 1e250 {
            pw * (wk * rgamma(x))
        } else {
            let e = if derivative { (kf - 1.0) * lnz } else { kf * lnz };
            let r = rgamma(x);
            if r == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (e - ln_gamma(x)).exp() * wk * r.signum()
            }
        };
        acc.add(term);
        let mag = term.norm();
        abs_sum += mag;
        if k > start + 1 && mag < 1e-17 * acc.sum.norm() && mag < prev {
            break;
        }
        prev = mag;
        if k >= start {
            pw *= z;
        }
    }
    (acc.sum, abs_sum)
}

fn series_ok(sum: Complex64, abs_sum: f64) -> bool {
    abs_sum <= MAX_CANCELLATION * sum.norm()
}

/// E_{a,b}(z) by the Taylor series alone.
pub fn ml_series(p: MlParams, z: Complex64) -> Complex64 {
    conj_fix(z, taylor(p, z, false).0)
}

/// E_{a,b}(z) by the contour integral alone.
pub fn ml_contour(p: MlParams, z: Complex64) -> Complex64 {
    if z.norm() < 1e-15 {
        return Complex64::new(rgamma(p.beta), 0.0);
    }
    conj_fix(z, laplace_inversion(p.alpha, p.beta, z))
}

/// E_{a,b}(z).
pub fn ml_eval(p: MlParams, z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if r > 1e8 {
        return Err(FslpError::InvalidInput(format!("|z| = {r:e} beyond the supported range 1e8")));
    }
    check_overflow(p, z)?;
    if r < 1e-15 {
        return Ok(Complex64::new(rgamma(p.beta), 0.0));
    }
    if r <= SERIES_RADIUS {
        let (v, a) = taylor(p, z, false);
        if series_ok(v, a) {
            return Ok(conj_fix(z, v));
        }
    }
    Ok(conj_fix(z, laplace_inversion(p.alpha, p.beta, z)))
}

/// d/dz E_{a,b}(z).
pub fn ml_derivative(p: MlParams, z: Complex64) -> Result<Complex64> {
    check_overflow(p, z)?;
    if z.norm() <= SERIES_RADIUS {
        let (v, a) = taylor(p, z, true);
        if series_ok(v, a) || z.norm() < 1.0 {
            return Ok(conj_fix(z, v));
        }
    }
    // a z E' = E_{a,b-1} - (b-1) E_{a,b}
    let e0 = laplace_inversion(p.alpha, p.beta, z);
    let e1 = laplace_inversion(p.alpha, p.beta - 1.0, z);
    Ok(conj_fix(z, (e1 - (p.beta - 1.0) * e0) / (p.alpha * z)))
}

fn conj_fix(z: Complex64, v: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(v.re, 0.0)
    } else {
        v
    }
}

fn check_overflow(p: MlParams, z: Complex64) -> Result<()> {
    let r = z.norm();
    if r == 0.0 {
        return Ok(());
    }
    let theta = z.arg();
    let mut growth = f64::NEG_INFINITY;
    let kmin = (-p.alpha / 2.0 - theta / (2.0 * PI)).ceil() as i64;
    let kmax = (p.alpha / 2.0 - theta / (2.0 * PI)).floor() as i64;
    for k in kmin..=kmax {
        let ang = (theta + 2.0 * PI * k as f64) / p.alpha;
        growth = growth.max(r.powf(1.0 / p.alpha) * ang.cos());
    }
    if growth > 700.0 {
        return Err(FslpError::Overflow(r));
    }
    Ok(())
}

fn laplace_inversion(alpha: f64, beta: f64, lam: Complex64) -> Complex64 {
    let t = 1.0;
    let eps = f64::EPSILON;
    let mut log_epsilon = 1e-15f64.ln();
    let theta = lam.arg();
    let kmin = (-alpha / 2.0 - theta / (2.0 * PI)).ceil() as i64;
    let kmax = (alpha / 2.0 - theta / (2.0 * PI)).floor() as i64;
    let rad = lam.norm().powf(1.0 / alpha);
    let mut poles: Vec<(Complex64, f64)> = (kmin..=kmax)
        .map(|k| {
            let s = Complex64::from_polar(rad, (theta + 2.0 * PI * k as f64) / alpha);
            (s, 0.5 * (s.re + s.norm()))
        })
        .collect();
    poles.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut ss = vec![Complex64::new(0.0, 0.0)];
    let mut ph = vec![0.0];
    for (s, f) in poles {
        if f > 1e-15 {
            ss.push(s);
            ph.push(f);
        }
    }
    let j1 = ss.len();
    let mut pw = vec![1.0; j1];
    pw[0] = (-2.0 * (alpha - beta + 1.0)).max(0.0);
    let mut qw = vec![1.0; j1];
    qw[j1 - 1] = f64::INFINITY;
    ph.push(f64::INFINITY);
    let admissible: Vec<usize> =
        (0..j1).filter(|&j| ph[j] < (log_epsilon - eps.ln()) / t && ph[j] < ph[j + 1]).collect();
    let mut best = (0usize, 0.0, 0.0, f64::INFINITY);
    for _ in 0..20 {
        best = (0, 0.0, 0.0, f64::INFINITY);
        for &j in &admissible {
            let (mu, h, n) = if j + 1 < j1 {
                region_bounded(t, ph[j], ph[j + 1], pw[j], qw[j], log_epsilon)
            } else {
                region_unbounded(t, ph[j], pw[j], log_epsilon)
            };
            if n < best.3 {
                best = (j, mu, h, n);
            }
        }
        if best.3 > 200.0 {
            log_epsilon += std::f64::consts::LN_10;
        } else {
            break;
        }
    }
    let (jn, mu, h, n) = best;
    let n = n as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in -n..=n {
        let u = h * k as f64;
        let zz = mu * Complex64::new(1.0, u).powi(2);
        let zd = Complex64::new(-2.0 * mu * u, 2.0 * mu);
        let f = zz.powf(alpha - beta) / (zz.powf(alpha) - lam) * zd;
        acc += (zz * t).exp() * f;
    }
    let integral = acc * h / Complex64::new(0.0, 2.0 * PI);
    let mut residues = Complex64::new(0.0, 0.0);
    for s in &ss[jn + 1..] {
        residues += s.powf(1.0 - beta) * (s * t).exp() / alpha;
    }
    integral + residues
}

fn region_bounded(t: f64, phi_j: f64, phi_j1: f64, p: f64, q: f64, mut log_epsilon: f64) -> (f64, f64, f64) {
    let log_eps = f64::EPSILON.ln();
    let fac = 1.01;
    let f_max = (log_epsilon - log_eps).exp();
    let sj = phi_j.sqrt();
    let thr = 2.0 * ((log_epsilon - log_eps) / t).sqrt();
    let sj1 = phi_j1.sqrt().min(thr - sj);
    let mut out: Option<(f64, f64, f64)> = None;
    if p < 1e-14 && q < 1e-14 {
        out = Some((sj, sj1, 1.0));
    }
    if p < 1e-14 && q >= 1e-14 {
        let f_min = if sj > 0.0 { fac * (sj / (sj1 - sj)).powf(q) } else { fac };
        if f_min < f_max {
            let f_bar = f_min + f_min / f_max * (f_max - f_min);
            let fq = f_bar.powf(-1.0 / q);
            out = Some((sj, (2.0 * sj1 - fq * sj) / (2.0 + fq), f_bar));
        }
    }
    if p >= 1e-14 && q < 1e-14 {
        let f_min = fac * (sj1 / (sj1 - sj)).powf(p);
        if f_min < f_max {
            let f_bar = f_min + f_min / f_max * (f_max - f_min);
            let fp = f_bar.powf(-1.0 / p);
            out = Some(((2.0 * sj + fp * sj1) / (2.0 - fp), sj1, f_bar));
        }
    }
    if p >= 1e-14 && q >= 1e-14 {
        let mut f_min = fac * (sj + sj1) / (sj1 - sj).powf(p.max(q));
        if f_min < f_max {
            f_min = f_min.max(1.5);
            let f_bar = f_min + f_min / f_max * (f_max - f_min);
            let fp = f_bar.powf(-1.0 / p);
            let fq = f_bar.powf(-1.0 / q);
            let w = -phi_j1 * t / log_epsilon;
            let den = 2.0 + w - (1.0 + w) * fp + fq;
            let a = ((2.0 + w + fq) * sj + fp * sj1) / den;
            let b = (-(1.0 + w) * fq * sj + (2.0 + w - (1.0 + w) * fp) * sj1) / den;
            out = Some((a, b, f_bar));
        }
    }
    match out {
        Some((sbj, sbj1, f_bar)) => {
            log_epsilon -= f_bar.ln();
            let w = -sbj1 * sbj1 * t / log_epsilon;
            let mu = (((1.0 + w) * sbj + sbj1) / (2.0 + w)).powi(2);
            let h = -2.0 * PI / log_epsilon * (sbj1 - sbj) / ((1.0 + w) * sbj + sbj1);
            let n = ((1.0 - log_epsilon / t / mu).sqrt() / h).ceil();
            (mu, h, n)
        }
        None => (0.0, 0.0, f64::INFINITY),
    }
}

fn region_unbounded(t: f64, phi_j: f64, p: f64, log_epsilon: f64) -> (f64, f64, f64) {
    let sq = phi_j.sqrt();
    let mut phib = if phi_j > 0.0 { phi_j * 1.01 } else { 0.01 };
    let mut sqb = phib.sqrt();
    let (f_min, f_max, f_tar) = (1.0, 10.0, 5.0f64);
    let (mut n, mut a, mut smu);
    let mut guard = 0;
    loop {
        let phi_t = phib * t;
        let le = log_epsilon / phi_t;
        n = (phi_t / PI * (1.0 - 1.5 * le + (1.0 - 2.0 * le).sqrt())).ceil();
        a = PI * n / phi_t;
        smu = sqb * (4.0 - a).abs() / (7.0 - (1.0 + 12.0 * a).sqrt()).abs();
        let fbar = ((sqb - sq) / smu).powf(-p);
        guard += 1;
        if p < 1e-14 || (f_min < fbar && fbar < f_max) || guard > 100 {
            break;
        }
        sqb = f_tar.powf(-1.0 / p) * smu + sq;
        phib = sqb * sqb;
    }
    let mut mu = smu * smu;
    let mut h = (-3.0 * a - 2.0 + 2.0 * (1.0 + 12.0 * a).sqrt()) / (4.0 - a) / n;
    let log_eps = f64::EPSILON.ln();
    let thr = (log_epsilon - log_eps) / t;
    if mu > thr {
        let qv = if p.abs() < 1e-14 { 0.0 } else { f_tar.powf(-1.0 / p) * mu.sqrt() };
        let phib = (qv + phi_j.sqrt()).powi(2);
        if phib < thr {
            let w = (log_eps / (log_eps - log_epsilon)).sqrt();
            let u = (-phib * t / log_eps).sqrt();
            mu = thr;
            n = (w * log_epsilon / 2.0 / PI / (u * w - 1.0)).ceil();
            h = (log_eps / (log_eps - log_epsilon)).sqrt() / n;
        } else {
            n = f64::INFINITY;
            h = 0.0;
        }
    }
    (mu, h, n)
}

/// Newton refinement of a zero of lambda -> E_{a,b}(-lambda) from a nearby seed.
pub fn ml_zero_refine(p: MlParams, seed: Complex64) -> Result<Complex64> {
    let e0 = ml_eval(p, -seed)?;
    if !(e0.norm() < 0.5) {
        return Err(FslpError::InvalidInput(format!(
            "seed {seed} is not near a zero (|E(-seed)| = {:.3e})",
            e0.norm()
        )));
    }
    let mut lam = seed;
    let mut prev_step = f64::INFINITY;
    let mut growth = 0;
    for _ in 0..100 {
        let f = ml_eval(p, -lam)?;
        if f == Complex64::new(0.0, 0.0) {
            return Ok(lam);
        }
        let df = -ml_derivative(p, -lam)?;
        let step = f / df;
        let s = step.norm();
        if !s.is_finite() {
            return Err(FslpError::NewtonDiverged { re: lam.re, im: lam.im });
        }
        lam -= step;
        if s <= 1e-12 * (1.0 + lam.norm()) {
            return Ok(lam);
        }
        if s > prev_step {
            growth += 1;
            if growth >= 5 {
                return Err(FslpError::NewtonDiverged { re: lam.re, im: lam.im });
            }
        } else {
            growth = 0;
        }
        prev_step = s;
    }
    Err(FslpError::NewtonDiverged { re: lam.re, im: lam.im })
}

/// log10 |E_{a,b}(-lambda)| on an nx x ny grid over [re0, re1] x [im0, im1].
/// Rows run over the imaginary axis, columns over the real axis.
pub fn log_abs_grid(p: MlParams, re: (f64, f64), im: (f64, f64), nx: usize, ny: usize) -> Result<Vec<Vec<f64>>> {
    let step =
        |lo: f64, hi: f64, n: usize, k: usize| if n > 1 { lo + (hi - lo) * k as f64 / (n - 1) as f64 } else { lo };
    (0..ny)
        .map(|iy| {
            (0..nx)
                .map(|ix| {
                    let lam = Complex64::new(step(re.0, re.1, nx, ix), step(im.0, im.1, ny, iy));
                    ml_eval(p, -lam).map(|v| v.norm().log10())
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ml(a: f64, b: f64, z: Complex64) -> Complex64 {
        ml_eval(MlParams::new(a, b).unwrap(), z).unwrap()
    }

    #[test]
    fn elementary_identities() {
        let e = ml(1.0, 1.0, Complex64::new(1.0, 0.0));
        assert!((e.re - std::f64::consts::E).abs() < 1e-15);
        let s = ml(2.0, 2.0, Complex64::new(-PI * PI, 0.0));
        assert!(s.norm() < 1e-15);
        assert!((ml(1.5, 0.7, Complex64::new(0.0, 0.0)).re - rgamma(0.7)).abs() < 1e-16);
        for x in [-30.0, -14.0, -5.0, 20.0] {
            let v = ml(2.0, 2.0, Complex64::new(x, 0.0));
            let expect = if x < 0.0 { (-x).sqrt().sin() / (-x).sqrt() } else { x.sqrt().sinh() / x.sqrt() };
            assert!((v.re - expect).abs() <= 1e-13 * expect.abs().max(1.0), "{x} {v} {expect}");
        }
    }

    #[test]
    fn exponential_identity() {
        for k in 0..40 {
            let z = Complex64::from_polar(0.25 * k as f64 % 10.0, 0.7 * k as f64);
            let v = ml(1.0, 1.0, z) * (-z).exp();
            assert!((v - 1.0).norm() < 1e-12, "{z} {v}");
        }
    }

    #[test]
    fn derivative_consistency() {
        let p = MlParams::new(1.5, 2.0).unwrap();
        for z in [Complex64::new(-3.0, 1.0), Complex64::new(-20.0, 2.0), Complex64::new(-50.0, 0.0)] {
            let d = ml_derivative(p, z).unwrap();
            let hh = 1e-5 * (1.0 + z.norm());
            let fd = (ml_eval(p, z + hh).unwrap() - ml_eval(p, z - hh).unwrap()) / (2.0 * hh);
            assert!((d - fd).norm() <= 1e-7 * (1.0 + d.norm()), "{z} {d} {fd}");
        }
    }

    #[test]
    fn classical_zeros() {
        let p = MlParams::new(2.0, 2.0).unwrap();
        let z = ml_zero_refine(p, Complex64::new(9.5, 0.0)).unwrap();
        assert!((z.re - PI * PI).abs() < 1e-9, "{z}");
        let z = ml_zero_refine(p, Complex64::new(40.0, 0.0)).unwrap();
        assert!((z.re - 4.0 * PI * PI).abs() < 1e-8, "{z}");
        assert!(ml_zero_refine(p, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let p = MlParams::new(1.0, 1.0).unwrap();
        assert!(matches!(ml_eval(p, Complex64::new(800.0, 0.0)), Err(FslpError::Overflow(_))));
        assert!(ml_eval(p, Complex64::new(-800.0, 0.0)).is_ok());
    }
}
