//! Interval prime sums, truncated exponentials, their product over the
//! partition intervals, and the expanded Dirichlet-series representation.
//!
//! Two routes to the same object: evaluating the degree-capped exponential
//! factors directly (cheap, any scheme), and materializing the expanded
//! coefficient series (possible only when the support is small). The
//! representation-equivalence tests cross-check them.

use crate::partition::PartitionScheme;
use crate::polyval::PolyValue;
use crate::sum::{Accumulator, ComplexAccumulator};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

/// Prime reciprocal power sum over one interval at s = 1/2 + it:
/// sum over the interval primes of p^{-1/2 - it}.
pub fn prime_sum(primes: &[u64], t: f64) -> Complex64 {
    let mut acc = ComplexAccumulator::new();
    for &p in primes {
        let pf = p as f64;
        acc.add(Complex64::from_polar(pf.powf(-0.5), -t * pf.ln()));
    }
    acc.value()
}

/// Spec-level wrapper: interval j of a scheme, sieving on demand.
pub fn p_poly_eval(scheme: &PartitionScheme, j: usize, t: f64) -> Result<Complex64> {
    Ok(prime_sum(&scheme.interval_primes(j)?, t))
}

/// Degree-capped exponential sum_{r=0}^{cap} z^r / r! by Horner.
pub fn truncated_exp(z: Complex64, cap: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for r in (1..=cap).rev() {
        acc = Complex64::new(1.0, 0.0) + z * acc / (r as f64);
    }
    acc
}

/// One factor of the mollifier: the degree-K_j truncation of
/// exp(alpha * prime_sum) on interval j.
pub fn n_j_eval(scheme: &PartitionScheme, j: usize, alpha: f64, t: f64) -> Result<Complex64> {
    let z = p_poly_eval(scheme, j, t)?;
    Ok(truncated_exp(z.scale(alpha), scheme.cap(j)))
}

/// The full product over intervals, accumulated in log space.
pub fn n_eval(scheme: &PartitionScheme, alpha: f64, t: f64) -> Result<PolyValue> {
    let ev = MollifierEvaluator::prepare(scheme)?;
    Ok(ev.value(alpha, t))
}

// ---------------------------------------------------------------------------
// Prepared evaluator
// ---------------------------------------------------------------------------

struct IntervalData {
    inv_sqrt: Vec<f64>,
    ln_p: Vec<f64>,
    cap: u32,
}

/// Sieved-once evaluator for a scheme's mollifier factors.
pub struct MollifierEvaluator {
    intervals: Vec<IntervalData>,
}

impl MollifierEvaluator {
    pub fn prepare(scheme: &PartitionScheme) -> Result<Self> {
        let mut intervals = Vec::with_capacity(scheme.n_intervals());
        for j in 2..=scheme.ell {
            let primes = scheme.interval_primes(j)?;
            intervals.push(IntervalData {
                inv_sqrt: primes.iter().map(|&p| (p as f64).powf(-0.5)).collect(),
                ln_p: primes.iter().map(|&p| (p as f64).ln()).collect(),
                cap: scheme.cap(j),
            });
        }
        Ok(MollifierEvaluator { intervals })
    }

    pub fn n_intervals(&self) -> usize {
        self.intervals.len()
    }

    /// Total number of primes across all intervals (cost indicator).
    pub fn n_primes(&self) -> usize {
        self.intervals.iter().map(|iv| iv.ln_p.len()).sum()
    }

    fn interval_sum(&self, idx: usize, t: f64) -> Complex64 {
        let iv = &self.intervals[idx];
        let mut acc = ComplexAccumulator::new();
        for (w, lp) in iv.inv_sqrt.iter().zip(&iv.ln_p) {
            acc.add(Complex64::from_polar(*w, -t * lp));
        }
        acc.value()
    }

    /// Product over intervals of the capped exponentials at alpha, log space.
    pub fn value(&self, alpha: f64, t: f64) -> PolyValue {
        let mut out = PolyValue::ONE;
        for (idx, iv) in self.intervals.iter().enumerate() {
            let z = self.interval_sum(idx, t).scale(alpha);
            let f = truncated_exp(z, iv.cap);
            out = out.mul(&PolyValue::from_complex(f));
        }
        out
    }

    /// Fill `sums[idx][d]` with interval idx's prime sum at
    /// t = t_anchor + d*step, advanced by per-prime phase rotations from an
    /// exact anchor evaluation.
    pub fn interval_sums_block(
        &self,
        t_anchor: f64,
        step: f64,
        len: usize,
        sums: &mut [Vec<Complex64>],
    ) {
        for (idx, iv) in self.intervals.iter().enumerate() {
            let buf = &mut sums[idx];
            buf.clear();
            buf.resize(len, Complex64::new(0.0, 0.0));
            let m = iv.ln_p.len();
            if m == 0 {
                continue;
            }
            let mut phasor: Vec<Complex64> = (0..m)
                .map(|i| Complex64::from_polar(iv.inv_sqrt[i], -t_anchor * iv.ln_p[i]))
                .collect();
            let rotor: Vec<Complex64> =
                iv.ln_p.iter().map(|lp| Complex64::from_polar(1.0, -step * lp)).collect();
            for d in 0..len {
                let mut acc = ComplexAccumulator::new();
                for z in &phasor {
                    acc.add(*z);
                }
                buf[d] = acc.value();
                if d + 1 < len {
                    for (z, w) in phasor.iter_mut().zip(&rotor) {
                        *z *= *w;
                    }
                }
            }
        }
    }

    /// Capped exponential of interval idx given its prime sum.
    pub fn factor(&self, idx: usize, alpha: f64, sum: Complex64) -> Complex64 {
        truncated_exp(sum.scale(alpha), self.intervals[idx].cap)
    }

    pub fn cap(&self, idx: usize) -> u32 {
        self.intervals[idx].cap
    }
}

// ---------------------------------------------------------------------------
// Crude majorant for intervals with large prime sums
// ---------------------------------------------------------------------------

/// Log-space evaluation of the majorant
/// (12 |P| / K)^{2K} * sum_{r=0}^{floor(K/k)} (2e |P| / (r+1))^{2r}
/// with |P| the interval prime-sum modulus. Nonnegative by construction.
pub fn crude_majorant_from_modulus(p_mod: f64, cap: u32, k: f64) -> Result<PolyValue> {
    if cap == 0 {
        return Err(Error::Precondition("majorant needs cap >= 1".into()));
    }
    if !(k > 0.0) {
        return Err(Error::Precondition(format!("majorant needs k > 0, got {k}")));
    }
    if p_mod == 0.0 {
        return Ok(PolyValue::ZERO);
    }
    let kf = cap as f64;
    let prefactor_log = 2.0 * kf * (12.0 * p_mod / kf).ln();
    let r_max = (kf / k).floor() as u32;
    // log-sum-exp over terms 2r ln(2e |P| / (r+1))
    let term_log =
        |r: u32| 2.0 * r as f64 * (2.0 * std::f64::consts::E * p_mod / (r as f64 + 1.0)).ln();
    let mut max_log = 0.0f64; // the r = 0 term is 1
    for r in 0..=r_max {
        max_log = max_log.max(term_log(r));
    }
    let mut acc = Accumulator::new();
    for r in 0..=r_max {
        acc.add((term_log(r) - max_log).exp());
    }
    Ok(PolyValue::from_log(prefactor_log + max_log + acc.value().ln()))
}

/// Majorant of interval j of a scheme at height t.
pub fn q_j_eval(scheme: &PartitionScheme, j: usize, k: f64, t: f64) -> Result<PolyValue> {
    let p = p_poly_eval(scheme, j, t)?;
    crude_majorant_from_modulus(p.norm(), scheme.cap(j), k)
}

// ---------------------------------------------------------------------------
// Expanded coefficient support
// ---------------------------------------------------------------------------

/// Default cap on the materialized support size.
pub const DEFAULT_SERIES_CAP: usize = 10_000_000;

/// One expanded term: integer n, Omega(n), and g(n) = 1/g_den exactly.
#[derive(Clone, Debug)]
pub struct SupportTerm {
    pub n: u128,
    pub omega: u32,
    pub g_den: BigUint,
}

impl SupportTerm {
    pub fn g_value(&self) -> f64 {
        1.0 / self.g_den.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// The materialized support of a scheme: all integers with prime factors in
/// the scheme's intervals and per-interval factor counts within the caps,
/// together with their multiplicative data. Sorted by n.
pub struct ExpandedSupport {
    pub terms: Vec<SupportTerm>,
}

fn factorial_biguint(r: u32) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=r {
        f *= i;
    }
    f
}

/// Number of multisets of size <= cap from m primes (term count of one
/// interval), saturating at `limit`.
fn interval_term_count(m: usize, cap: u32, limit: f64) -> f64 {
    // sum_{r=0}^{cap} C(m + r - 1, r)
    let mut total = 1.0f64;
    let mut binom = 1.0f64;
    for r in 1..=cap {
        binom *= (m as f64 + r as f64 - 1.0) / r as f64;
        total += binom;
        if total > limit {
            return limit + 1.0;
        }
    }
    total
}

fn expand_interval(primes: &[u64], cap: u32) -> Result<Vec<SupportTerm>> {
    fn rec(
        primes: &[u64],
        idx: usize,
        budget: u32,
        n: u128,
        omega: u32,
        g_den: &BigUint,
        out: &mut Vec<SupportTerm>,
    ) -> Result<()> {
        if idx == primes.len() {
            out.push(SupportTerm { n, omega, g_den: g_den.clone() });
            return Ok(());
        }
        let p = primes[idx] as u128;
        let mut cur = n;
        for r in 0..=budget {
            let d = g_den * factorial_biguint(r);
            rec(primes, idx + 1, budget - r, cur, omega + r, &d, out)?;
            if r < budget {
                cur = cur.checked_mul(p).ok_or(Error::SupportOverflow)?;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(primes, 0, cap, 1, 0, &BigUint::one(), &mut out)?;
    Ok(out)
}

impl ExpandedSupport {
    /// Materialize the support of a scheme, failing if the pre-counted size
    /// exceeds `cap_terms`.
    pub fn materialize(scheme: &PartitionScheme, cap_terms: usize) -> Result<Self> {
        let mut estimated = 1.0f64;
        let mut interval_primes = Vec::new();
        for j in 2..=scheme.ell {
            let primes = scheme.interval_primes(j)?;
            estimated *= interval_term_count(primes.len(), scheme.cap(j), cap_terms as f64);
            if estimated > cap_terms as f64 {
                return Err(Error::SeriesCapacity { estimated, cap: cap_terms });
            }
            interval_primes.push((primes, scheme.cap(j)));
        }
        let mut acc: Vec<SupportTerm> =
            vec![SupportTerm { n: 1, omega: 0, g_den: BigUint::one() }];
        for (primes, cap) in interval_primes {
            let part = expand_interval(&primes, cap)?;
            let mut next = Vec::with_capacity(acc.len() * part.len());
            for a in &acc {
                for b in &part {
                    next.push(SupportTerm {
                        n: a.n.checked_mul(b.n).ok_or(Error::SupportOverflow)?,
                        omega: a.omega + b.omega,
                        g_den: &a.g_den * &b.g_den,
                    });
                }
            }
            acc = next;
        }
        acc.sort_by_key(|t| t.n);
        Ok(ExpandedSupport { terms: acc })
    }

    /// Largest support element.
    pub fn max_n(&self) -> u128 {
        self.terms.last().map(|t| t.n).unwrap_or(1)
    }

    /// The Dirichlet series with coefficients alpha^Omega(n) g(n).
    pub fn series(&self, alpha: f64, description: String) -> DirichletSeries {
        let terms = self
            .terms
            .iter()
            .map(|t| SeriesTerm {
                n: t.n,
                coeff: Complex64::new(alpha.powi(t.omega as i32) * t.g_value(), 0.0),
                omega: t.omega,
            })
            .collect();
        DirichletSeries { terms, description }
    }
}

/// Materialize with a term cap and produce the series for one alpha.
pub fn expand_coefficients(
    scheme: &PartitionScheme,
    alpha: f64,
    cap_terms: usize,
) -> Result<DirichletSeries> {
    let support = ExpandedSupport::materialize(scheme, cap_terms)?;
    Ok(support.series(alpha, format!("scheme {} alpha {alpha}", scheme.digest())))
}

// ---------------------------------------------------------------------------
// Dirichlet series
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct SeriesTerm {
    pub n: u128,
    pub coeff: Complex64,
    pub omega: u32,
}

/// A finite Dirichlet polynomial sum_n c(n) n^{-s}; evaluation folds in the
/// n^{-1/2} critical-line normalization.
#[derive(Clone, Debug)]
pub struct DirichletSeries {
    pub terms: Vec<SeriesTerm>,
    pub description: String,
}

impl DirichletSeries {
    pub fn new(terms: Vec<(u128, Complex64)>, description: &str) -> Self {
        let mut terms: Vec<SeriesTerm> = terms
            .into_iter()
            .map(|(n, coeff)| SeriesTerm { n, coeff, omega: crate::primes::big_omega(n) })
            .collect();
        terms.sort_by_key(|t| t.n);
        for w in terms.windows(2) {
            assert!(w[0].n != w[1].n, "duplicate support element {}", w[0].n);
        }
        DirichletSeries { terms, description: description.to_string() }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_n(&self) -> u128 {
        self.terms.last().map(|t| t.n).unwrap_or(1)
    }

    /// sum c(n) n^{-1/2} e^{-it ln n}, compensated.
    pub fn eval(&self, t: f64) -> Complex64 {
        let mut acc = ComplexAccumulator::new();
        for term in &self.terms {
            let nf = term.n as f64;
            acc.add(term.coeff * Complex64::from_polar(nf.powf(-0.5), -t * nf.ln()));
        }
        acc.value()
    }

    /// sum |c(n)|^2 / n (the mean-value prediction per unit length).
    pub fn l2_norm(&self) -> f64 {
        let mut acc = Accumulator::new();
        for term in &self.terms {
            acc.add(term.coeff.norm_sqr() / term.n as f64);
        }
        acc.value()
    }

    /// Evaluate on a regular grid t = t0 + i*step, i < n, by phase
    /// recurrence in fixed blocks; bit-deterministic for any worker count.
    pub fn eval_on_grid(&self, t0: f64, step: f64, n: usize) -> Vec<Complex64> {
        const BLOCK: usize = 512;
        let weights: Vec<f64> = self.terms.iter().map(|t| (t.n as f64).powf(-0.5)).collect();
        let lns: Vec<f64> = self.terms.iter().map(|t| (t.n as f64).ln()).collect();
        let coeffs: Vec<Complex64> = self.terms.iter().map(|t| t.coeff).collect();
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        values.par_chunks_mut(BLOCK).enumerate().for_each(|(ci, out)| {
            let i0 = ci * BLOCK;
            let t_anchor = t0 + i0 as f64 * step;
            let mut phasor: Vec<Complex64> = weights
                .iter()
                .zip(&lns)
                .map(|(w, lp)| Complex64::from_polar(*w, -t_anchor * lp))
                .collect();
            let rotor: Vec<Complex64> =
                lns.iter().map(|lp| Complex64::from_polar(1.0, -step * lp)).collect();
            let block_len = out.len();
            for (d, slot) in out.iter_mut().enumerate() {
                let mut acc = ComplexAccumulator::new();
                for (z, c) in phasor.iter().zip(&coeffs) {
                    acc.add(*c * *z);
                }
                *slot = acc.value();
                if d + 1 < block_len {
                    for (z, w) in phasor.iter_mut().zip(&rotor) {
                        *z *= *w;
                    }
                }
            }
        });
        values
    }

    /// CSV export: columns n, re(c), im(c), omega(n); header mandatory.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re_c,im_c,omega\n");
        for t in &self.terms {
            out.push_str(&format!("{},{},{},{}\n", t.n, t.coeff.re, t.coeff.im, t.omega));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Regime;
    use rand::Rng;
    use rand::SeedableRng;

    fn two_prime_scheme(cap: u32) -> PartitionScheme {
        PartitionScheme::from_parts(1e4, 1.0, Regime::SmallK, &[2.0, 5.0], &[cap]).unwrap()
    }

    #[test]
    fn prime_sum_basics() {
        assert_eq!(prime_sum(&[], 3.0), Complex64::new(0.0, 0.0));
        // t = 0: positive real
        let s = prime_sum(&[2, 3, 5], 0.0);
        let expect = 2.0f64.powf(-0.5) + 3.0f64.powf(-0.5) + 5.0f64.powf(-0.5);
        assert!((s.re - expect).abs() < 1e-14 && s.im.abs() < 1e-15);
        // two-term direct evaluation at t = 1
        let s = prime_sum(&[2, 3], 1.0);
        let expect = Complex64::from_polar(2.0f64.powf(-0.5), -2.0f64.ln())
            + Complex64::from_polar(3.0f64.powf(-0.5), -3.0f64.ln());
        assert!((s - expect).norm() < 1e-15);
    }

    #[test]
    fn truncated_exp_degenerate_cases() {
        let z = Complex64::new(0.7, -0.3);
        assert_eq!(truncated_exp(z, 0), Complex64::new(1.0, 0.0));
        assert_eq!(truncated_exp(Complex64::new(0.0, 0.0), 7), Complex64::new(1.0, 0.0));
        // alpha = 0 through the scheme path
        let s = two_prime_scheme(3);
        assert_eq!(n_j_eval(&s, 2, 0.0, 1.3).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn truncated_exp_matches_term_sum() {
        let z = Complex64::new(0.4, 1.1);
        let cap = 9;
        let mut direct = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for r in 0..=cap {
            direct += term;
            term *= z / (r as f64 + 1.0);
        }
        assert!((truncated_exp(z, cap) - direct).norm() < 1e-15);
    }

    #[test]
    fn n_eval_is_product_of_factors() {
        let s =
            PartitionScheme::from_parts(1e4, 1.0, Regime::SmallK, &[2.0, 5.0, 11.0], &[2, 3])
                .unwrap();
        let alpha = 0.8;
        let t = 2.7;
        let f1 = n_j_eval(&s, 2, alpha, t).unwrap();
        let f2 = n_j_eval(&s, 3, alpha, t).unwrap();
        let product = f1 * f2;
        let v = n_eval(&s, alpha, t).unwrap().to_complex();
        assert!((v - product).norm() < 1e-12 * product.norm());
        // alpha = 0 gives exactly one
        let one = n_eval(&s, 0.0, t).unwrap();
        assert_eq!(one.log_modulus, 0.0);
    }

    #[test]
    fn expansion_trivial_and_hand_checked() {
        // all caps zero -> single term (1, 1)
        let s = two_prime_scheme(0);
        let series = expand_coefficients(&s, 0.77, 100).unwrap();
        assert_eq!(series.len(), 1);
        assert_eq!(series.terms[0].n, 1);
        assert_eq!(series.terms[0].coeff, Complex64::new(1.0, 0.0));

        // primes {2, 3}, cap 2: n in {1, 2, 3, 4, 6, 9}
        let s = two_prime_scheme(2);
        let alpha = 0.6f64;
        let series = expand_coefficients(&s, alpha, 100).unwrap();
        let ns: Vec<u128> = series.terms.iter().map(|t| t.n).collect();
        assert_eq!(ns, vec![1, 2, 3, 4, 6, 9]);
        let coeff_of = |n: u128| series.terms.iter().find(|t| t.n == n).unwrap().coeff.re;
        assert!((coeff_of(4) - alpha * alpha / 2.0).abs() < 1e-15);
        assert!((coeff_of(6) - alpha * alpha).abs() < 1e-15);
        assert!((coeff_of(9) - alpha * alpha / 2.0).abs() < 1e-15);
    }

    #[test]
    fn expansion_capacity_pre_check() {
        // 25 primes with cap 12 explodes combinatorially; the pre-count must
        // fire before any allocation.
        let s =
            PartitionScheme::from_parts(1e6, 1.0, Regime::SmallK, &[2.0, 100.0], &[12]).unwrap();
        match ExpandedSupport::materialize(&s, 1000) {
            Err(Error::SeriesCapacity { estimated, cap }) => {
                assert!(estimated > cap as f64);
            }
            other => panic!("expected capacity error, got {:?}", other.map(|s| s.terms.len())),
        }
    }

    #[test]
    fn representation_equivalence_small() {
        // expanded series evaluation == product of capped exponentials
        let s =
            PartitionScheme::from_parts(1e4, 1.0, Regime::SmallK, &[2.0, 8.0, 20.0], &[3, 2])
                .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for &alpha in &[-0.4, 0.3, 1.0] {
            let series = expand_coefficients(&s, alpha, 100_000).unwrap();
            for _ in 0..50 {
                let t = rng.gen_range(1e4..2e4);
                let a = series.eval(t);
                let b = n_eval(&s, alpha, t).unwrap().to_complex();
                assert!(
                    (a - b).norm() <= 1e-9 * (1.0 + b.norm()),
                    "alpha {alpha} t {t}: series {a} product {b}"
                );
            }
        }
    }

    #[test]
    fn support_bound_respected() {
        let s = PartitionScheme::from_parts(1e4, 1.0, Regime::SmallK, &[2.0, 8.0], &[4]).unwrap();
        let support = ExpandedSupport::materialize(&s, 100_000).unwrap();
        let bound = s.support_log.exp();
        assert!((support.max_n() as f64) <= bound * (1.0 + 1e-12));
        for t in &support.terms {
            assert!(t.omega <= 4);
        }
    }

    #[test]
    fn series_eval_basics() {
        let s = DirichletSeries::new(vec![(1, Complex64::new(1.0, 0.0))], "unit");
        for t in [0.0, 5.0, 100.0] {
            assert_eq!(s.eval(t), Complex64::new(1.0, 0.0));
        }
        let s = DirichletSeries::new(vec![(4, Complex64::new(0.5, 0.0))], "single");
        assert!((s.eval(0.0).re - 0.25).abs() < 1e-15);
        assert_eq!(s.terms[0].omega, 2);
    }

    #[test]
    fn series_conjugate_symmetry_real_coeffs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let terms: Vec<(u128, Complex64)> = (0..100)
            .map(|i| (i as u128 + 1, Complex64::new(rng.gen_range(-1.0..1.0), 0.0)))
            .collect();
        let s = DirichletSeries::new(terms, "random");
        for t in [3.3, 77.7] {
            let a = s.eval(t);
            let b = s.eval(-t);
            assert!((a.conj() - b).norm() < 1e-12);
        }
    }

    #[test]
    fn grid_eval_matches_pointwise() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut seen = std::collections::BTreeMap::new();
        for _ in 0..60 {
            seen.insert(rng.gen_range(1u128..900), Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
        }
        let s = DirichletSeries::new(seen.into_iter().collect(), "dedup");
        let vals = s.eval_on_grid(1000.0, 0.37, 1200);
        for i in [0usize, 1, 511, 512, 513, 1199] {
            let t = 1000.0 + i as f64 * 0.37;
            assert!((vals[i] - s.eval(t)).norm() < 1e-10, "node {i}");
        }
    }

    #[test]
    fn majorant_cases() {
        // zero prime sum with cap >= 1 collapses to zero
        let q = crude_majorant_from_modulus(0.0, 3, 1.0).unwrap();
        assert!(q.is_zero());
        // cap 1, k 1, modulus p: (12 p)^2 (1 + (e p)^2)
        let p = 0.37;
        let q = crude_majorant_from_modulus(p, 1, 1.0).unwrap().to_complex().re;
        let expect = (12.0 * p).powi(2) * (1.0 + (std::f64::consts::E * p).powi(2));
        assert!((q - expect).abs() < 1e-12 * expect, "{q} vs {expect}");
        // nonnegative by construction, huge values stay in log space
        let q = crude_majorant_from_modulus(9.0, 40, 0.5).unwrap();
        assert!(q.log_modulus.is_finite());
        assert_eq!(q.argument, 0.0);
        // cap 0 is a precondition violation
        assert!(crude_majorant_from_modulus(1.0, 0, 1.0).is_err());
    }

    #[test]
    fn csv_has_header_and_omega() {
        let s = two_prime_scheme(2);
        let series = expand_coefficients(&s, 1.0, 100).unwrap();
        let csv = series.to_csv();
        assert!(csv.starts_with("n,re_c,im_c,omega\n"));
        assert!(csv.lines().count() == series.len() + 1);
        assert!(csv.contains("\n4,0.5,0,2\n"));
    }
}
