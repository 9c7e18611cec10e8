//! The iterated-logarithm interval scheme underlying every mollifier.
//!
//! A scheme fixes a depth `ell`, interval endpoints `T_1 < ... < T_ell`,
//! reciprocal prime sums `P_j` over `[T_{j-1}, T_j)` and integer caps `K_j`
//! limiting the number of prime factors drawn from each interval.

use crate::primes;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which endpoint/cap formulas the scheme uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Exponents 0 < k <= 1: T_j = exp(k log T / (log_j T)^2), K_j = ceil(c P_j).
    #[serde(rename = "small-k")]
    SmallK,
    /// Exponents k >= 1: T_j = exp(log T / (k^2 (log_j T)^2)), K_j = ceil(c k^2 P_j).
    #[serde(rename = "large-k")]
    LargeK,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::SmallK => write!(f, "small-k"),
            Regime::LargeK => write!(f, "large-k"),
        }
    }
}

/// Full interval scheme. Immutable after construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionScheme {
    pub k: f64,
    #[serde(rename = "T")]
    pub height: f64,
    pub regime: Regime,
    /// Iterated-log depth threshold (10^4 in the asymptotic setting; much
    /// smaller values are needed for any computable height).
    pub theta: f64,
    /// Cap multiplier (500 in the asymptotic setting).
    pub cmult: f64,
    pub ell: usize,
    /// Interval endpoints T_1 ... T_ell.
    #[serde(rename = "Tseq")]
    pub t_seq: Vec<f64>,
    /// Reciprocal prime sums P_2 ... P_ell.
    #[serde(rename = "Pseq")]
    pub p_seq: Vec<f64>,
    /// Prime-factor caps K_2 ... K_ell.
    #[serde(rename = "Kseq")]
    pub k_seq: Vec<u32>,
    /// log of the largest integer the expanded support can reach:
    /// sum over j of K_j log T_j.
    pub support_log: f64,
}

/// log applied `depth` times to `x`. Errors when an intermediate value that
/// still needs another log is <= 0; the final value may be any real.
pub fn iterated_log(x: f64, depth: u32) -> Result<f64> {
    assert!(depth >= 1, "iterated_log requires depth >= 1");
    let mut v = x;
    for d in 1..=depth {
        if v <= 0.0 {
            return Err(Error::IteratedLogDomain { value: v, depth: d });
        }
        v = v.ln();
    }
    Ok(v)
}

/// Largest depth `j >= 1` with `iterated_log(height, j) >= theta`.
pub fn partition_depth(height: f64, theta: f64) -> Result<usize> {
    if !height.is_finite() {
        return Err(Error::Precondition(format!("height must be finite, got {height}")));
    }
    let first = iterated_log(height, 1)?;
    partition_depth_from_log(first, theta)
}

/// As [`partition_depth`] but fed log T directly, for heights whose log is
/// representable while T itself is not (towers like exp(exp(exp(3)))).
pub fn partition_depth_from_log(log_t: f64, theta: f64) -> Result<usize> {
    if !log_t.is_finite() {
        return Err(Error::Precondition(format!("log T must be finite, got {log_t}")));
    }
    if log_t < theta {
        return Err(Error::NoValidPartition { log_t, theta });
    }
    let mut depth = 1;
    let mut v = log_t;
    loop {
        if v <= 0.0 {
            return Ok(depth);
        }
        let next = v.ln();
        if next < theta {
            return Ok(depth);
        }
        depth += 1;
        v = next;
    }
}

impl PartitionScheme {
    /// Build the scheme for integration height `height` (integrals run over
    /// [height, 2*height]) and moment exponent `k`.
    pub fn build(height: f64, k: f64, theta: f64, cmult: f64, regime: Regime) -> Result<Self> {
        Self::build_capped(height, k, theta, cmult, regime, primes::DEFAULT_SIEVE_LIMIT)
    }

    pub fn build_capped(
        height: f64,
        k: f64,
        theta: f64,
        cmult: f64,
        regime: Regime,
        sieve_limit: u64,
    ) -> Result<Self> {
        match regime {
            Regime::SmallK => {
                if !(k > 0.0 && k <= 1.0) {
                    return Err(Error::Precondition(format!(
                        "small-k regime requires 0 < k <= 1, got {k}"
                    )));
                }
            }
            Regime::LargeK => {
                if k < 1.0 {
                    return Err(Error::Precondition(format!(
                        "large-k regime requires k >= 1, got {k}"
                    )));
                }
            }
        }
        if cmult <= 0.0 {
            return Err(Error::Precondition(format!("cmult must be > 0, got {cmult}")));
        }
        let ell = partition_depth(height, theta)?;
        if ell < 2 {
            return Err(Error::NoValidPartition { log_t: height.ln(), theta });
        }
        let log_t = height.ln();
        let e2 = std::f64::consts::E * std::f64::consts::E;
        let t1 = match regime {
            Regime::SmallK => e2,
            Regime::LargeK => k.powi(4) * e2,
        };
        let mut t_seq = vec![t1];
        for j in 2..=ell {
            let lj = iterated_log(height, j as u32)?;
            let tj = match regime {
                Regime::SmallK => (k * log_t / (lj * lj)).exp(),
                Regime::LargeK => (log_t / (k * k * lj * lj)).exp(),
            };
            let prev = *t_seq.last().unwrap();
            if tj <= prev {
                return Err(Error::DegeneratePartition { j, prev, next: tj });
            }
            t_seq.push(tj);
        }
        let mut p_seq = Vec::with_capacity(ell - 1);
        let mut k_seq = Vec::with_capacity(ell - 1);
        let mut support_log = 0.0;
        for j in 2..=ell {
            let p = primes::reciprocal_prime_sum_capped(t_seq[j - 2], t_seq[j - 1], sieve_limit)?;
            let cap = match regime {
                Regime::SmallK => (cmult * p).ceil() as u32,
                Regime::LargeK => (cmult * k * k * p).ceil() as u32,
            };
            support_log += cap as f64 * t_seq[j - 1].ln();
            p_seq.push(p);
            k_seq.push(cap);
        }
        Ok(PartitionScheme {
            k,
            height,
            regime,
            theta,
            cmult,
            ell,
            t_seq,
            p_seq,
            k_seq,
            support_log,
        })
    }

    /// Assemble a scheme from explicit interval endpoints and caps. Used for
    /// desk-scale experiments over hand-picked prime windows; the P_j are
    /// still computed by sieving, so scheme invariants relating P_j to the
    /// endpoints hold by construction.
    pub fn from_parts(
        height: f64,
        k: f64,
        regime: Regime,
        endpoints: &[f64],
        caps: &[u32],
    ) -> Result<Self> {
        if endpoints.len() < 2 {
            return Err(Error::Precondition("need at least two endpoints".into()));
        }
        if caps.len() != endpoints.len() - 1 {
            return Err(Error::Precondition(format!(
                "expected {} caps for {} endpoints, got {}",
                endpoints.len() - 1,
                endpoints.len(),
                caps.len()
            )));
        }
        for (j, w) in endpoints.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::DegeneratePartition { j: j + 2, prev: w[0], next: w[1] });
            }
        }
        let mut p_seq = Vec::new();
        let mut support_log = 0.0;
        for (w, &cap) in endpoints.windows(2).zip(caps) {
            p_seq.push(primes::reciprocal_prime_sum(w[0], w[1])?);
            support_log += cap as f64 * w[1].ln();
        }
        // theta/cmult are 0 to mark that endpoints and caps were supplied
        // explicitly rather than derived from the iterated-log formulas.
        Ok(PartitionScheme {
            k,
            height,
            regime,
            theta: 0.0,
            cmult: 0.0,
            ell: endpoints.len(),
            t_seq: endpoints.to_vec(),
            p_seq,
            k_seq: caps.to_vec(),
            support_log,
        })
    }

    /// Number of prime intervals (= ell - 1); interval index j runs 2..=ell.
    pub fn n_intervals(&self) -> usize {
        self.ell - 1
    }

    /// Endpoints [T_{j-1}, T_j) of interval j (2 <= j <= ell).
    pub fn interval(&self, j: usize) -> (f64, f64) {
        assert!((2..=self.ell).contains(&j), "interval index out of range");
        (self.t_seq[j - 2], self.t_seq[j - 1])
    }

    /// Cap K_j of interval j.
    pub fn cap(&self, j: usize) -> u32 {
        assert!((2..=self.ell).contains(&j), "interval index out of range");
        self.k_seq[j - 2]
    }

    /// Reciprocal prime sum P_j of interval j.
    pub fn prime_sum_at_one(&self, j: usize) -> f64 {
        assert!((2..=self.ell).contains(&j), "interval index out of range");
        self.p_seq[j - 2]
    }

    /// Primes of interval j, sieved on demand.
    pub fn interval_primes(&self, j: usize) -> Result<Vec<u64>> {
        let (lo, hi) = self.interval(j);
        Ok(primes::sieve_primes(lo, hi)?.primes)
    }

    /// Stable content digest used to tie quadrature results to a scheme.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_string(self).expect("scheme serializes");
        let mut h = Sha256::new();
        h.update(json.as_bytes());
        let out = h.finalize();
        out.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Result of comparing the expanded-support bound against the budget
/// (k/9) log T from the defining inequality of the support set.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SupportBound {
    pub bound_log: f64,
    pub budget_log: f64,
    pub within: bool,
}

/// Reported, not enforced: desk-scale constants routinely violate it.
pub fn support_bound_check(scheme: &PartitionScheme) -> SupportBound {
    let bound_log = scheme.support_log;
    let budget_log = scheme.k / 9.0 * scheme.height.ln();
    SupportBound { bound_log, budget_log, within: bound_log <= budget_log }
}

/// Analytic audit of the support bound for asymptotic-scale parameters where
/// neither T nor log T is representable. Works from log log T downward using
/// the Mertens approximation P_j ~ 2 log_j T - 2 log_{j+1} T, so no sieving
/// is involved. Valid for the small-k regime.
pub fn support_bound_audit(loglog_t: f64, theta: f64, cmult: f64) -> Result<SupportBound> {
    if loglog_t < theta {
        return Err(Error::NoValidPartition { log_t: loglog_t, theta });
    }
    // iterated logs of T starting at log_2 T = loglog_t
    let mut logs = vec![loglog_t];
    loop {
        let last = *logs.last().unwrap();
        if last <= 0.0 {
            break;
        }
        let next = last.ln();
        if next < theta {
            break;
        }
        logs.push(next);
    }
    // ell = 1 + number of entries (log_1 T >= theta is implied by log_2 T >= theta
    // for theta >= 1); intervals j = 2..=ell.
    // ratio = bound_log / budget_log = 9 * sum_j cmult * P_j / (k (log_j T)^2)
    // with P_j ~ 2 log_j T - 2 log_{j+1} T and log T_j = k log T/(log_j T)^2:
    // the k and log T cancel.
    let mut ratio = 0.0;
    for &lj in &logs {
        let next = lj.ln();
        let pj = 2.0 * lj - 2.0 * next;
        ratio += 9.0 * cmult * pj / (lj * lj);
    }
    Ok(SupportBound { bound_log: ratio, budget_log: 1.0, within: ratio <= 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterated_log_single() {
        assert!((iterated_log(std::f64::consts::E, 1).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn iterated_log_double() {
        let v = iterated_log(1e8, 2).unwrap();
        assert!((v - 2.9134739869277917).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn iterated_log_negative_value_is_not_an_error() {
        // log_3(10) is negative but defined; only log_4 hits a nonpositive
        // intermediate.
        let v = iterated_log(10.0, 3).unwrap();
        assert!((v - (10.0f64.ln().ln().ln())).abs() < 1e-15);
        assert!(v < 0.0);
        match iterated_log(10.0, 4) {
            Err(Error::IteratedLogDomain { depth: 4, .. }) => {}
            other => panic!("expected domain error at depth 4, got {other:?}"),
        }
    }

    #[test]
    fn depth_examples() {
        assert_eq!(partition_depth(1e8, 2.0).unwrap(), 2);
        match partition_depth(1e8, 20.0) {
            Err(Error::NoValidPartition { .. }) => {}
            other => panic!("expected no-valid-partition, got {other:?}"),
        }
        // T = exp(exp(exp(3))) overflows a double, but its log does not:
        // feed log T = exp(exp(3)) and expect depth 3
        // (log_3 T = 3 >= 2.5, log_4 T = log 3 < 2.5).
        let log_t = 3.0f64.exp().exp();
        assert_eq!(partition_depth_from_log(log_t, 2.5).unwrap(), 3);
        match partition_depth(f64::INFINITY, 2.5) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn build_desk_scheme() {
        let s = PartitionScheme::build(1e8, 1.0, 2.0, 20.0, Regime::SmallK).unwrap();
        assert_eq!(s.ell, 2);
        let e2 = std::f64::consts::E * std::f64::consts::E;
        assert!((s.t_seq[0] - e2).abs() < 1e-12);
        let l2 = 1e8f64.ln().ln();
        let expect_t2 = (1e8f64.ln() / (l2 * l2)).exp();
        assert!((s.t_seq[1] - expect_t2).abs() < 1e-9 * expect_t2);
        assert!((s.t_seq[1] - 8.7593191906861279).abs() < 1e-12);
        // no primes in [e^2, 8.77)
        assert_eq!(s.p_seq, vec![0.0]);
        assert_eq!(s.k_seq, vec![0]);
        assert_eq!(s.support_log, 0.0);
    }

    #[test]
    fn build_triple_depth_scheme() {
        // Tower height T = exp(exp(3)): log_2 T = 3, log_3 T = log 3 ~ 1.0986.
        let height = 3.0f64.exp().exp();
        let s = PartitionScheme::build(height, 1.0, 1.05, 500.0, Regime::SmallK).unwrap();
        assert_eq!(s.ell, 3);
        let log_t = 3.0f64.exp();
        let expect_t2 = (log_t / 9.0).exp();
        assert!((s.t_seq[1] - expect_t2).abs() < 1e-9 * expect_t2);
        let l3 = 3.0f64.ln();
        let expect_t3 = (log_t / (l3 * l3)).exp();
        assert!((s.t_seq[2] - expect_t3).abs() < 1e-9 * expect_t3);
        assert!(s.t_seq[2] < 2e7 && s.t_seq[2] > 1e7);
    }

    #[test]
    fn build_rejects_bad_k() {
        match PartitionScheme::build(1e6, 0.0, 2.0, 500.0, Regime::SmallK) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected precondition error, got {other:?}"),
        }
        match PartitionScheme::build(1e6, 0.5, 2.0, 500.0, Regime::LargeK) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn build_detects_degenerate_endpoints() {
        // k = 0.5 at desk heights puts T_2 below e^2.
        match PartitionScheme::build(1e6, 0.5, 2.0, 20.0, Regime::SmallK) {
            Err(Error::DegeneratePartition { j: 2, .. }) => {}
            other => panic!("expected degenerate partition, got {other:?}"),
        }
    }

    #[test]
    fn regimes_match_their_formulas() {
        // For fixed height and matching exponents the two regimes produce the
        // same interior endpoints: small-k with k and large-k with 1/sqrt(k)
        // both give exp(k log T/(log_j T)^2).
        let height = 1e16;
        let k = 0.85f64;
        let small = PartitionScheme::build(height, k, 2.0, 20.0, Regime::SmallK).unwrap();
        let large =
            PartitionScheme::build(height, 1.0 / k.sqrt(), 2.0, 20.0, Regime::LargeK).unwrap();
        assert_eq!(small.ell, large.ell);
        for (a, b) in small.t_seq.iter().zip(&large.t_seq).skip(1) {
            assert!((a - b).abs() <= 1e-12 * a.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn deterministic_construction() {
        let a = PartitionScheme::build(1e8, 1.0, 2.0, 20.0, Regime::SmallK).unwrap();
        let b = PartitionScheme::build(1e8, 1.0, 2.0, 20.0, Regime::SmallK).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.digest(), b.digest());
    }

    #[test]
    fn support_bound_trivial_scheme() {
        let s = PartitionScheme::build(1e8, 1.0, 2.0, 20.0, Regime::SmallK).unwrap();
        let r = support_bound_check(&s);
        assert!(r.within);
        assert_eq!(r.bound_log, 0.0);
    }

    #[test]
    fn support_bound_audit_at_asymptotic_constants() {
        // log log T = 1e5 (so T = exp(exp(1e5))), theta = 1e4, cmult = 500.
        let r = support_bound_audit(1e5, 1e4, 500.0).unwrap();
        assert!(r.within, "ratio = {}", r.bound_log);
        // And the audit correctly reports violation for reckless constants.
        let bad = support_bound_audit(1e5, 1.0, 500.0).unwrap();
        assert!(!bad.within);
    }

    #[test]
    fn mertens_window_agreement() {
        // For a built scheme the last interval's sieved P_ell must match the
        // iterated-log approximation within 10 / log T_{ell-1}.
        // Depth-3 scheme with sieveable T_3: log_2 T = 4.3, k log T = 38.
        let log_t = 4.3f64.exp();
        let k = 38.0 / log_t;
        let height = log_t.exp();
        let s = PartitionScheme::build(height, k, 1.3, 20.0, Regime::SmallK).unwrap();
        assert_eq!(s.ell, 3);
        let l3 = iterated_log(height, 3).unwrap();
        let l4 = iterated_log(height, 4).unwrap();
        let approx = 2.0 * l3 - 2.0 * l4;
        let sieved = s.p_seq[1];
        let tol = 10.0 / s.t_seq[1].ln();
        assert!(
            (sieved - approx).abs() <= tol,
            "sieved {sieved} vs approx {approx}, tol {tol}"
        );
    }

    #[test]
    fn scheme_json_field_names() {
        let s = PartitionScheme::build(1e8, 1.0, 2.0, 20.0, Regime::SmallK).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        for key in ["\"T\":", "\"Tseq\":", "\"Pseq\":", "\"Kseq\":", "\"ell\":", "\"regime\":"] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
        let back: PartitionScheme = serde_json::from_str(&json).unwrap();
        assert_eq!(back.digest(), s.digest());
    }
}
