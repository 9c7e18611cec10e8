//! Riemann-Siegel evaluation of Z(t) and zeta(1/2 + it).
//!
//! Main sum of length floor(sqrt(t/2pi)) plus up to five asymptotic
//! correction terms C_0..C_4. The correction coefficients are combinations
//! of derivatives of
//!
//!   psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p),
//!
//! an entire function after removing the singularities at p = 1/4, 3/4.
//! Evaluation goes through fixed Chebyshev tables (`rs_tables`); the
//! series-arithmetic derivation of the same coefficients is kept in
//! [`correction_series`] as an independent route that the tests compare
//! against the tables.

use crate::sum::Accumulator;
use crate::zeta::euler_maclaurin::{zeta_em, DEFAULT_EM_TERMS};
use crate::zeta::rs_tables::RS_CORRECTION_CHEB;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Maximum number of correction terms (C_0 through C_4).
pub const MAX_CORRECTIONS: usize = 4;

/// Below these heights the asymptotic corrections cannot reach ~1e-8 and the
/// evaluator falls back to Euler-Maclaurin. Indexed by correction count.
pub const RS_MIN_T: [f64; 5] = [3.0e8, 2.0e5, 2500.0, 600.0, 160.0];

/// Heights below this are rejected outright; the main sum is empty there.
pub const RS_ABS_MIN_T: f64 = 10.0;

/// Clenshaw evaluation of a Chebyshev series on [0, 1].
fn cheb_eval(coeffs: &[f64], p: f64) -> f64 {
    let x = 2.0 * p - 1.0;
    let two_x = 2.0 * x;
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in coeffs.iter().rev() {
        let b0 = c + two_x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    b1 - x * b2
}

/// C_j(p) from the precomputed Chebyshev tables.
pub fn correction_coefficient(j: usize, p: f64) -> f64 {
    assert!(j <= MAX_CORRECTIONS);
    cheb_eval(&RS_CORRECTION_CHEB[j], p)
}

// ---------------------------------------------------------------------------
// Series-arithmetic derivation of the correction coefficients. Slower and
// noisier (~1e-9 absolute worst case on C_3/C_4, from the high-order
// derivatives) than the tables; retained as an independent cross-check.
// ---------------------------------------------------------------------------

/// Taylor coefficients of psi around p0, after deflating the removable zero
/// when p0 is exactly 1/4 or 3/4.
fn psi_taylor(p0: f64, order: usize) -> Vec<f64> {
    let m = order + 30;
    // numerator cos(a + b h + c h^2) = Re[e^{ia} e^{ibh} e^{ich^2}]
    let a = 2.0 * PI * (p0 * p0 - p0 - 1.0 / 16.0);
    let b = 2.0 * PI * (2.0 * p0 - 1.0);
    let c = 2.0 * PI;
    let mut e1 = vec![Complex64::new(0.0, 0.0); m];
    let ib = Complex64::new(0.0, b);
    let mut acc = Complex64::new(1.0, 0.0);
    for (k, slot) in e1.iter_mut().enumerate() {
        *slot = acc;
        acc *= ib / (k as f64 + 1.0);
    }
    let mut e2 = vec![Complex64::new(0.0, 0.0); m];
    let ic = Complex64::new(0.0, c);
    let mut acc2 = Complex64::new(1.0, 0.0);
    let mut idx = 0;
    while 2 * idx < m {
        e2[2 * idx] = acc2;
        acc2 *= ic / (idx as f64 + 1.0);
        idx += 1;
    }
    let ea = Complex64::from_polar(1.0, a);
    let mut num = vec![0.0f64; m];
    for i in 0..m {
        if e1[i].norm_sqr() == 0.0 {
            continue;
        }
        for j in 0..m - i {
            if e2[j].norm_sqr() == 0.0 {
                continue;
            }
            num[i + j] += (ea * (e1[i] * e2[j])).re;
        }
    }
    // denominator cos(d0 + 2 pi h)
    let d0 = 2.0 * PI * p0;
    let (sin_d0, cos_d0) = d0.sin_cos();
    let mut den = vec![0.0f64; m];
    let mut w = 1.0;
    for (k, slot) in den.iter_mut().enumerate() {
        *slot = w * match k % 4 {
            0 => cos_d0,
            1 => -sin_d0,
            2 => -cos_d0,
            _ => sin_d0,
        };
        w *= 2.0 * PI / (k as f64 + 1.0);
    }
    let (num, den): (&[f64], &[f64]) = if den[0].abs() < 1e-12 {
        // removable singularity: both series vanish at h = 0
        debug_assert!(num[0].abs() < 1e-10);
        (&num[1..], &den[1..])
    } else {
        (&num[..], &den[..])
    };
    let n_out = (order + 1).min(num.len());
    let mut q = vec![0.0f64; n_out];
    for n in 0..n_out {
        let mut s = num[n];
        for k in 0..n {
            s -= q[k] * den[n - k];
        }
        q[n] = s / den[0];
    }
    q
}

/// n-th derivative of psi at p, transporting from the nearest removable
/// singularity when p is close to one.
fn psi_derivative(p: f64, n: usize) -> f64 {
    for center in [0.25, 0.75] {
        let d = p - center;
        if d.abs() < 0.1 {
            let q = psi_taylor(center, n + 60);
            // psi^(n)(p) = sum_j q_{n+j} (n+j)!/j! d^j
            let mut term = 1.0f64;
            for i in 1..=n {
                term *= i as f64;
            }
            let mut s = Accumulator::new();
            for j in 0..=60 {
                let idx = n + j;
                if idx >= q.len() {
                    break;
                }
                s.add(q[idx] * term);
                term *= (idx + 1) as f64 / (j + 1) as f64 * d;
            }
            return s.value();
        }
    }
    let q = psi_taylor(p, n);
    let mut f = 1.0f64;
    for i in 1..=n {
        f *= i as f64;
    }
    q[n] * f
}

/// C_j(p) derived live from psi-derivative series; the tabulated
/// [`correction_coefficient`] is the production path.
pub fn correction_series(j: usize, p: f64) -> f64 {
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let pi6 = pi4 * pi2;
    let pi8 = pi4 * pi4;
    let d = |n: usize| psi_derivative(p, n);
    match j {
        0 => d(0),
        1 => -d(3) / (96.0 * pi2),
        2 => d(2) / (64.0 * pi2) + d(6) / (18432.0 * pi4),
        3 => -d(1) / (64.0 * pi2) - d(5) / (3840.0 * pi4) - d(9) / (5308416.0 * pi6),
        4 => {
            d(0) / (128.0 * pi2)
                + 19.0 * d(4) / (24576.0 * pi4)
                + 11.0 * d(8) / (5898240.0 * pi6)
                + d(12) / (2038431744.0 * pi8)
        }
        _ => panic!("correction index out of range"),
    }
}

// ---------------------------------------------------------------------------
// theta and Z
// ---------------------------------------------------------------------------

/// Coefficients of the asymptotic series for the phase function:
/// (1 - 2^{1-2n}) |B_{2n}| / (4n (2n-1)), n = 1..8.
const THETA_COEFFS: [f64; 8] = [
    1.0 / 48.0,
    7.0 / 5760.0,
    31.0 / 80640.0,
    127.0 / 430080.0,
    511.0 / 1216512.0,
    1414477.0 / 1476034560.0,
    8191.0 / 2555904.0,
    118518239.0 / 8021606400.0,
];

/// Riemann-Siegel phase: theta(t) = arg Gamma(1/4 + it/2) - t/2 log pi,
/// by the Stirling expansion. Accurate to ~1e-12 for t >= 10.
pub fn rs_theta(t: f64) -> f64 {
    let mut v = 0.5 * t * (t / (2.0 * PI * std::f64::consts::E)).ln() - PI / 8.0;
    let t2 = t * t;
    let mut tp = t;
    for c in THETA_COEFFS {
        v += c / tp;
        tp *= t2;
    }
    v
}

/// How Z(t) was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZRoute {
    MainSum,
    EulerMaclaurin,
}

/// Hardy Z via the Riemann-Siegel formula with `corrections` in 0..=4
/// asymptotic correction terms. Falls back to the Euler-Maclaurin evaluator
/// below the height where the requested correction depth reaches ~1e-8
/// accuracy; the returned route records which path ran.
pub fn hardy_z(t: f64, corrections: usize) -> Result<(f64, ZRoute)> {
    if t < RS_ABS_MIN_T {
        return Err(Error::UseEulerMaclaurin(t));
    }
    let corrections = corrections.min(MAX_CORRECTIONS);
    if t < RS_MIN_T[corrections] {
        let z = zeta_em(Complex64::new(0.5, t), DEFAULT_EM_TERMS)?;
        let theta = rs_theta(t);
        return Ok(((Complex64::from_polar(1.0, theta) * z).re, ZRoute::EulerMaclaurin));
    }
    let tau = (t / (2.0 * PI)).sqrt();
    let n = tau.floor() as usize;
    let p = tau - n as f64;
    let theta = rs_theta(t);
    let mut main = Accumulator::new();
    for r in 1..=n {
        let rf = r as f64;
        main.add((theta - t * rf.ln()).cos() / rf.sqrt());
    }
    let mut z = 2.0 * main.value();
    let tau_inv = 1.0 / tau;
    let mut scale = tau_inv.sqrt();
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    for row in RS_CORRECTION_CHEB.iter().take(corrections + 1) {
        z += sign * scale * cheb_eval(row, p);
        scale *= tau_inv;
    }
    Ok((z, ZRoute::MainSum))
}

/// zeta(1/2 + it) = e^{-i theta(t)} Z(t).
pub fn zeta_rs(t: f64, corrections: usize) -> Result<Complex64> {
    let (z, _) = hardy_z(t, corrections)?;
    Ok(Complex64::from_polar(1.0, -rs_theta(t)) * z)
}
