//! Dense grids of zeta(1/2 + it) on [T, 2T].
//!
//! Grid evaluation is the dominant cost of every experiment, so the main
//! sums are advanced across consecutive nodes by per-frequency phase
//! rotations (one complex multiply per term per node instead of a sincos),
//! re-anchored with exact evaluations every [`ANCHOR`] nodes. Work is split
//! into fixed micro-chunks, which makes values bit-identical for any worker
//! count.

use crate::sum::ComplexAccumulator;
use crate::zeta::euler_maclaurin::{zeta_em, DEFAULT_EM_TERMS};
use crate::zeta::riemann_siegel::{correction_coefficient, rs_theta, RS_ABS_MIN_T, RS_MIN_T};
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

/// Nodes per recurrence anchor; also the parallel micro-chunk length.
const ANCHOR: usize = 512;

/// Default node spacing (>= 30 nodes per mean zero gap for T <= 1e6).
pub const DEFAULT_STEP: f64 = 0.02;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridMethod {
    #[serde(rename = "em")]
    EulerMaclaurin,
    #[serde(rename = "rs")]
    RiemannSiegel,
    #[serde(rename = "partial-sum")]
    PartialSum,
}

impl GridMethod {
    pub fn code(self) -> u8 {
        match self {
            GridMethod::EulerMaclaurin => 0,
            GridMethod::RiemannSiegel => 1,
            GridMethod::PartialSum => 2,
        }
    }

    pub fn from_code(c: u8) -> Option<Self> {
        match c {
            0 => Some(GridMethod::EulerMaclaurin),
            1 => Some(GridMethod::RiemannSiegel),
            2 => Some(GridMethod::PartialSum),
            _ => None,
        }
    }
}

impl std::fmt::Display for GridMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GridMethod::EulerMaclaurin => write!(f, "em"),
            GridMethod::RiemannSiegel => write!(f, "rs"),
            GridMethod::PartialSum => write!(f, "partial-sum"),
        }
    }
}

/// Cached zeta values at t_i = T + i*step, i = 0..n_nodes, spanning [T, 2T].
/// Composite trapezoid weights; immutable after construction.
#[derive(Debug)]
pub struct ZetaGrid {
    pub t0: f64,
    pub step: f64,
    pub method: GridMethod,
    pub values: Vec<Complex64>,
}

impl ZetaGrid {
    pub fn n_nodes(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.step
    }

    /// Trapezoid weight of node i.
    #[inline]
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.values.len() {
            0.5 * self.step
        } else {
            self.step
        }
    }

    /// Total integration length (2T - T up to grid granularity).
    pub fn length(&self) -> f64 {
        (self.n_nodes() - 1) as f64 * self.step
    }

    /// Build a grid from externally produced values (synthetic test grids,
    /// cache imports).
    pub fn from_values(t0: f64, step: f64, method: GridMethod, values: Vec<Complex64>) -> Self {
        ZetaGrid { t0, step, method, values }
    }

    /// Identity tuple used to match results computed on the same grid.
    pub fn fingerprint(&self) -> (u64, u64, usize) {
        (self.t0.to_bits(), self.step.to_bits(), self.n_nodes())
    }
}

fn node_count(t0: f64, step: f64) -> usize {
    (t0 / step).round() as usize + 1
}

/// Evaluate zeta(1/2+it) on [T, 2T] with spacing `step`.
///
/// `step` must resolve the local oscillation: step <= 2 pi / log T unless
/// `allow_coarse` is set.
pub fn eval_zeta_grid(
    t0: f64,
    step: f64,
    method: GridMethod,
    corrections: usize,
    allow_coarse: bool,
) -> Result<ZetaGrid> {
    if !(t0 > RS_ABS_MIN_T && step > 0.0) {
        return Err(Error::Precondition(format!(
            "grid requires T > {RS_ABS_MIN_T} and positive step; got T = {t0}, step = {step}"
        )));
    }
    let limit = 2.0 * PI / (2.0 * t0).ln();
    if step > limit && !allow_coarse {
        return Err(Error::StepTooCoarse { step, t: t0, limit });
    }
    let n = node_count(t0, step);
    let values = match method {
        GridMethod::RiemannSiegel => rs_grid(t0, step, n, corrections),
        GridMethod::EulerMaclaurin => (0..n)
            .into_par_iter()
            .map(|i| zeta_em(Complex64::new(0.5, t0 + i as f64 * step), DEFAULT_EM_TERMS))
            .collect::<Result<Vec<_>>>()?,
        GridMethod::PartialSum => {
            let len = t0.floor() as usize;
            partial_sum_grid(t0, step, n, len)
        }
    };
    Ok(ZetaGrid { t0, step, method, values })
}

/// One anchor block of the Riemann-Siegel main sum: exact phasors at the
/// anchor node, phase rotations within the block.
fn rs_block(t0: f64, step: f64, i0: usize, len: usize, corrections: usize, out: &mut [Complex64]) {
    let t_anchor = t0 + i0 as f64 * step;
    let t_end = t0 + (i0 + len - 1) as f64 * step;
    let n_max = ((t_end / (2.0 * PI)).sqrt().floor()) as usize;

    // phasors z_r = r^{-1/2} e^{-i t ln r} at the anchor, rotors w_r = e^{-i step ln r}
    let mut phasor = Vec::with_capacity(n_max);
    let mut rotor = Vec::with_capacity(n_max);
    for r in 1..=n_max {
        let lr = (r as f64).ln();
        phasor.push(Complex64::from_polar((r as f64).powf(-0.5), -t_anchor * lr));
        rotor.push(Complex64::from_polar(1.0, -step * lr));
    }

    for (di, slot) in out.iter_mut().enumerate() {
        let t = t0 + (i0 + di) as f64 * step;
        let tau = (t / (2.0 * PI)).sqrt();
        let n_cur = tau.floor() as usize;
        let p = tau - n_cur as f64;
        let theta = rs_theta(t);
        let mut s = ComplexAccumulator::new();
        for z in phasor.iter().take(n_cur) {
            s.add(*z);
        }
        let sum = s.value();
        // Z = 2 Re(e^{i theta} S) + corrections
        let eith = Complex64::from_polar(1.0, theta);
        let mut z = 2.0 * (eith * sum).re;
        let tau_inv = 1.0 / tau;
        let mut scale = tau_inv.sqrt();
        let sign = if n_cur % 2 == 1 { 1.0 } else { -1.0 };
        for j in 0..=corrections {
            z += sign * scale * correction_coefficient(j, p);
            scale *= tau_inv;
        }
        *slot = Complex64::from_polar(1.0, -theta) * z;
        if di + 1 < len {
            for (zr, wr) in phasor.iter_mut().zip(&rotor) {
                *zr *= *wr;
            }
        }
    }
}

fn rs_grid(t0: f64, step: f64, n: usize, corrections: usize) -> Vec<Complex64> {
    // Below the RS validity height for this correction depth, nodes use
    // Euler-Maclaurin (grids start at T > 2500 in practice, where two or
    // more corrections make the main-sum path exact to ~1e-11).
    let min_t = RS_MIN_T[corrections.min(RS_MIN_T.len() - 1)];
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    let blocks: Vec<(usize, &mut [Complex64])> = {
        let mut v = Vec::new();
        let mut rest = values.as_mut_slice();
        let mut i0 = 0;
        while !rest.is_empty() {
            let take = rest.len().min(ANCHOR);
            let (head, tail) = rest.split_at_mut(take);
            v.push((i0, head));
            i0 += take;
            rest = tail;
        }
        v
    };
    blocks.into_par_iter().for_each(|(i0, out)| {
        let t_start = t0 + i0 as f64 * step;
        if t_start >= min_t {
            rs_block(t0, step, i0, out.len(), corrections, out);
        } else {
            for (di, slot) in out.iter_mut().enumerate() {
                let t = t0 + (i0 + di) as f64 * step;
                *slot = zeta_em(Complex64::new(0.5, t), DEFAULT_EM_TERMS)
                    .expect("t > 10 on grids");
            }
        }
    });
    values
}

/// Truncated Dirichlet sum sum_{r <= len} r^{-1/2 - it}, compensated.
pub fn zeta_partial_sum(t: f64, len: usize) -> Complex64 {
    let mut acc = ComplexAccumulator::new();
    for r in 1..=len {
        let rf = r as f64;
        acc.add(Complex64::from_polar(rf.powf(-0.5), -t * rf.ln()));
    }
    acc.value()
}

fn partial_sum_grid(t0: f64, step: f64, n: usize, len: usize) -> Vec<Complex64> {
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    values
        .par_chunks_mut(ANCHOR)
        .enumerate()
        .for_each(|(ci, out)| {
            let i0 = ci * ANCHOR;
            let t_anchor = t0 + i0 as f64 * step;
            let mut phasor = Vec::with_capacity(len);
            let mut rotor = Vec::with_capacity(len);
            for r in 1..=len {
                let lr = (r as f64).ln();
                phasor.push(Complex64::from_polar((r as f64).powf(-0.5), -t_anchor * lr));
                rotor.push(Complex64::from_polar(1.0, -step * lr));
            }
            let block_len = out.len();
            for (di, slot) in out.iter_mut().enumerate() {
                let mut s = ComplexAccumulator::new();
                for z in &phasor {
                    s.add(*z);
                }
                *slot = s.value();
                if di + 1 < block_len {
                    for (zr, wr) in phasor.iter_mut().zip(&rotor) {
                        *zr *= *wr;
                    }
                }
            }
        });
    values
}

// ---------------------------------------------------------------------------
// Binary cache: header { "ZGRD", version u32, T f64, step f64, n u64,
// method u8 } then n little-endian (re, im) f64 pairs.
// ---------------------------------------------------------------------------

const MAGIC: &[u8; 4] = b"ZGRD";
const CACHE_VERSION: u32 = 1;

pub fn write_grid_cache(grid: &ZetaGrid, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&CACHE_VERSION.to_le_bytes())?;
    w.write_all(&grid.t0.to_le_bytes())?;
    w.write_all(&grid.step.to_le_bytes())?;
    w.write_all(&(grid.n_nodes() as u64).to_le_bytes())?;
    w.write_all(&[grid.method.code()])?;
    for v in &grid.values {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_grid_cache(path: &Path) -> Result<ZetaGrid> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::CacheMismatch(format!("bad magic in {}", path.display())));
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4)?;
    let version = u32::from_le_bytes(b4);
    if version != CACHE_VERSION {
        return Err(Error::CacheMismatch(format!("unsupported cache version {version}")));
    }
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let t0 = f64::from_le_bytes(b8);
    r.read_exact(&mut b8)?;
    let step = f64::from_le_bytes(b8);
    r.read_exact(&mut b8)?;
    let n = u64::from_le_bytes(b8) as usize;
    let mut b1 = [0u8; 1];
    r.read_exact(&mut b1)?;
    let method = GridMethod::from_code(b1[0])
        .ok_or_else(|| Error::CacheMismatch(format!("unknown method code {}", b1[0])))?;
    let mut values = Vec::with_capacity(n);
    for _ in 0..n {
        r.read_exact(&mut b8)?;
        let re = f64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let im = f64::from_le_bytes(b8);
        values.push(Complex64::new(re, im));
    }
    Ok(ZetaGrid { t0, step, method, values })
}

/// Quadrature of f(node value, t) over the grid with trapezoid weights;
/// returns (integral, summation error estimate). Deterministic for any
/// worker count.
pub fn integrate_grid<F>(grid: &ZetaGrid, f: F) -> (f64, f64)
where
    F: Fn(Complex64, f64) -> f64 + Sync,
{
    let n = grid.n_nodes();
    crate::sum::parallel_sum_indexed(n, |i| {
        grid.weight(i) * f(grid.values[i], grid.node(i))
    })
}

/// Complex-valued quadrature over the grid.
pub fn integrate_grid_complex<F>(grid: &ZetaGrid, f: F) -> (Complex64, f64)
where
    F: Fn(Complex64, f64) -> Complex64 + Sync,
{
    let n = grid.n_nodes();
    crate::sum::parallel_csum_indexed(n, |i| {
        f(grid.values[i], grid.node(i)).scale(grid.weight(i))
    })
}
