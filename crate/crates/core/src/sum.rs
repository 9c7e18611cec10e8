//! Compensated summation and deterministic parallel reduction.
//!
//! Every large reduction in the crate goes through these helpers so that
//! results are bit-identical regardless of worker count: work is split into
//! fixed-size chunks, each chunk is summed with Neumaier compensation, and
//! chunk partials are combined sequentially in index order.

use num_complex::Complex64;
use rayon::prelude::*;

/// Fixed chunk length for parallel reductions. Chunk boundaries depend only
/// on the index, never on the number of workers.
pub const CHUNK: usize = 4096;

/// Kahan-Neumaier accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    s: f64,
    c: f64,
    /// Running sum of |x|, used for the summation-error estimate.
    abs: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
        self.abs += x.abs();
    }

    /// Merge another accumulator into this one (sequential, in index order).
    pub fn merge(&mut self, other: &Accumulator) {
        self.add(other.s);
        self.c += other.c;
        self.abs += other.abs;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.s + self.c
    }

    /// Crude bound on the accumulated rounding error: eps * sum |x|.
    pub fn error_estimate(&self) -> f64 {
        f64::EPSILON * self.abs
    }
}

/// Compensated sum of an iterator, sequential.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = Accumulator::new();
    for x in iter {
        acc.add(x);
    }
    acc.value()
}

/// Compensated complex sum, sequential.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexAccumulator {
    pub re: Accumulator,
    pub im: Accumulator,
}

impl ComplexAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &ComplexAccumulator) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn error_estimate(&self) -> f64 {
        self.re.error_estimate() + self.im.error_estimate()
    }
}

/// Deterministic parallel reduction of `f(i)` for `i in 0..n`.
///
/// Chunks of [`CHUNK`] indices are mapped in parallel; partials are merged in
/// ascending chunk order, so the result does not depend on thread count.
pub fn parallel_sum_indexed<F>(n: usize, f: F) -> (f64, f64)
where
    F: Fn(usize) -> f64 + Sync,
{
    let n_chunks = n.div_ceil(CHUNK);
    let partials: Vec<Accumulator> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * CHUNK;
            let hi = ((ci + 1) * CHUNK).min(n);
            let mut acc = Accumulator::new();
            for i in lo..hi {
                acc.add(f(i));
            }
            acc
        })
        .collect();
    let mut total = Accumulator::new();
    for p in &partials {
        total.merge(p);
    }
    (total.value(), total.error_estimate())
}

/// Complex version of [`parallel_sum_indexed`].
pub fn parallel_csum_indexed<F>(n: usize, f: F) -> (Complex64, f64)
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let n_chunks = n.div_ceil(CHUNK);
    let partials: Vec<ComplexAccumulator> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * CHUNK;
            let hi = ((ci + 1) * CHUNK).min(n);
            let mut acc = ComplexAccumulator::new();
            for i in lo..hi {
                acc.add(f(i));
            }
            acc
        })
        .collect();
    let mut total = ComplexAccumulator::new();
    for p in &partials {
        total.merge(p);
    }
    (total.value(), total.error_estimate())
}
