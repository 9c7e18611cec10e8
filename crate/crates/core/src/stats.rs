//! Tail measures of |zeta| on the grid, the Markov bound, the moment
//! sandwich decomposition, and the normal-distribution comparison for
//! log |zeta(1/2 + it)|.
//!
//! All set measures are node counts times spacing, with no interpolation of
//! crossings, so every inequality against a grid moment is an exact discrete
//! statement.

use crate::constants::CONSTANTS;
use crate::moments::{MomentKind, MomentResult};
use crate::sum::Accumulator;
use crate::zeta::ZetaGrid;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Empirical measure of { t in [T, 2T] : |zeta(1/2+it)| >= e^V }: the
/// quadrature weight of the nodes meeting the threshold. Interior nodes
/// carry exactly the spacing, endpoints half of it, which keeps the Markov
/// comparison against grid moments an exact discrete inequality.
pub fn tail_measure(grid: &ZetaGrid, v: f64) -> f64 {
    let threshold = v.exp();
    let n = grid.n_nodes();
    let (m, _) = crate::sum::parallel_sum_indexed(n, |i| {
        if grid.values[i].norm() >= threshold {
            grid.weight(i)
        } else {
            0.0
        }
    });
    m
}

/// Tail data across a V-range plus the bounds it is compared against.
#[derive(Clone, Debug, Serialize)]
pub struct TailReport {
    #[serde(rename = "T")]
    pub t0: f64,
    pub v_values: Vec<f64>,
    pub measures: Vec<f64>,
    pub markov_bounds: Vec<f64>,
    pub gaussian_prediction: Vec<f64>,
}

/// e^{-2kV} times the 2k-th absolute moment; requires a matching moment.
pub fn markov_upper(moment: &MomentResult, k: f64, v: f64) -> Result<f64> {
    if moment.kind != MomentKind::AbsMoment {
        return Err(Error::Mismatch(format!(
            "markov bound needs an absolute moment, got {}",
            moment.kind
        )));
    }
    if moment.k != k {
        return Err(Error::Mismatch(format!(
            "markov bound exponent {k} does not match moment exponent {}",
            moment.k
        )));
    }
    Ok((-2.0 * k * v).exp() * moment.value_re)
}

/// Tail report over an ascending V grid, with the Markov bound at the given
/// moment and the Gaussian prediction T exp(-V^2 / log log T).
pub fn tail_report(grid: &ZetaGrid, moment: &MomentResult, v_values: &[f64]) -> Result<TailReport> {
    let mut measures = Vec::with_capacity(v_values.len());
    let mut markov_bounds = Vec::with_capacity(v_values.len());
    let mut gaussian = Vec::with_capacity(v_values.len());
    let loglog = grid.t0.ln().ln();
    for &v in v_values {
        measures.push(tail_measure(grid, v));
        markov_bounds.push(markov_upper(moment, moment.k, v)?);
        gaussian.push(grid.length() * (-v * v / loglog).exp());
    }
    Ok(TailReport {
        t0: grid.t0,
        v_values: v_values.to_vec(),
        measures,
        markov_bounds,
        gaussian_prediction: gaussian,
    })
}

/// Decomposition of the (k + delta)-moment sum into the ranges
/// |zeta| < e^V, e^V <= |zeta| <= e^V (log T)^{2 delta}, and above, with
/// V = k log log T. The shares partition the total exactly.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SandwichReport {
    pub k: f64,
    pub delta: f64,
    pub v: f64,
    pub share_low: f64,
    pub share_mid: f64,
    pub share_high: f64,
    pub total: f64,
}

pub fn sandwich_report(grid: &ZetaGrid, k: f64, delta: f64) -> Result<SandwichReport> {
    if !(k > 0.0 && delta >= 0.0 && k + 2.0 * delta <= 2.0) {
        return Err(Error::Precondition(format!(
            "sandwich needs k > 0, delta >= 0, k + 2 delta <= 2; got k = {k}, delta = {delta}"
        )));
    }
    let v = k * grid.t0.ln().ln();
    let low_cut = v.exp();
    let high_cut = low_cut * grid.t0.ln().powf(2.0 * delta);
    let e = k + delta;
    let n = grid.n_nodes();
    let sums: Vec<(Accumulator, Accumulator, Accumulator)> = (0..n.div_ceil(crate::sum::CHUNK))
        .into_par_iter()
        .map(|ci| {
            let lo = ci * crate::sum::CHUNK;
            let hi = ((ci + 1) * crate::sum::CHUNK).min(n);
            let mut a = Accumulator::new();
            let mut b = Accumulator::new();
            let mut c = Accumulator::new();
            for i in lo..hi {
                let m = grid.values[i].norm();
                let x = grid.weight(i) * m.powf(2.0 * e);
                if m < low_cut {
                    a.add(x);
                } else if m <= high_cut {
                    b.add(x);
                } else {
                    c.add(x);
                }
            }
            (a, b, c)
        })
        .collect();
    let mut low = Accumulator::new();
    let mut mid = Accumulator::new();
    let mut high = Accumulator::new();
    for (a, b, c) in &sums {
        low.merge(a);
        mid.merge(b);
        high.merge(c);
    }
    let (share_low, share_mid, share_high) = (low.value(), mid.value(), high.value());
    Ok(SandwichReport {
        k,
        delta,
        v,
        share_low,
        share_mid,
        share_high,
        total: share_low + share_mid + share_high,
    })
}

/// Moments of log |zeta| on the grid against the normal law with variance
/// half log log T.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CltReport {
    pub mean: f64,
    pub variance: f64,
    pub predicted_variance: f64,
    pub ks_distance: f64,
    pub excluded: usize,
    pub n_samples: usize,
}

fn normal_cdf(x: f64, sigma: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / (sigma * std::f64::consts::SQRT_2)))
}

pub fn clt_report(grid: &ZetaGrid) -> Result<CltReport> {
    let n = grid.n_nodes();
    let mut logs: Vec<f64> = grid
        .values
        .par_iter()
        .map(|z| {
            let m = z.norm();
            if m < CONSTANTS.log_modulus_floor {
                f64::NAN
            } else {
                m.ln()
            }
        })
        .collect();
    let excluded = logs.iter().filter(|x| x.is_nan()).count();
    if excluded as f64 > CONSTANTS.max_excluded_fraction * n as f64 {
        return Err(Error::DataQuality { excluded, total: n });
    }
    logs.retain(|x| !x.is_nan());
    let n_samples = logs.len();
    let (sum, _) = crate::sum::parallel_sum_indexed(n_samples, |i| logs[i]);
    let mean = sum / n_samples as f64;
    let (ss, _) = crate::sum::parallel_sum_indexed(n_samples, |i| (logs[i] - mean).powi(2));
    let variance = ss / n_samples as f64;
    let predicted_variance = 0.5 * grid.t0.ln().ln();

    logs.par_sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let sigma = predicted_variance.sqrt();
    // KS distance against N(0, predicted variance), evaluated at every
    // sorted sample (sup over both one-sided gaps).
    let ks = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let f = normal_cdf(logs[i], sigma);
            let lo = i as f64 / n_samples as f64;
            let hi = (i + 1) as f64 / n_samples as f64;
            (f - lo).abs().max((hi - f).abs())
        })
        .reduce(|| 0.0, f64::max);
    Ok(CltReport {
        mean,
        variance,
        predicted_variance,
        ks_distance: ks,
        excluded,
        n_samples,
    })
}

/// Two-column plot data: (V, measure/T) and (V, gaussian/T).
pub fn tail_plot_data(report: &TailReport) -> (String, String) {
    let len = report.measures.len();
    let norm = |v: f64| v / report.t0;
    let mut a = String::new();
    let mut b = String::new();
    for i in 0..len {
        a.push_str(&format!("{} {}\n", report.v_values[i], norm(report.measures[i])));
        b.push_str(&format!(
            "{} {}\n",
            report.v_values[i],
            norm(report.gaussian_prediction[i])
        ));
    }
    (a, b)
}
