//! Numerical laboratory for lower bounds on moments of |zeta(1/2+it)|.
//!
//! The pipeline mirrors the short-Dirichlet-polynomial machinery used in
//! moment lower-bound proofs:
//!
//! * [`primes`] — segmented sieving, Omega counts and the reciprocal-factorial
//!   multiplicative weight that appears in exponential expansions,
//! * [`partition`] — the iterated-logarithm interval scheme (depth, interval
//!   endpoints, reciprocal prime sums, Omega caps),
//! * [`zeta`] — zeta on the critical line: Euler–Maclaurin for reference,
//!   Riemann–Siegel for dense grids, truncated Dirichlet sums as an oracle,
//! * [`mollifier`] — interval prime sums, truncated exponentials, their
//!   product, and the expanded Dirichlet-series representation,
//! * [`moments`] — quadrature of the moment integrals, diagonal main terms,
//!   mean-value and splitting identities, Hölder chains,
//! * [`stats`] — tail measures, Markov bounds, moment sandwich decompositions
//!   and the normal-distribution comparison for log |zeta|,
//! * [`verify`] — the randomized property suites behind `critline verify`.

pub mod constants;
pub mod mollifier;
pub mod moments;
pub mod partition;
pub mod polyval;
pub mod primes;
pub mod stats;
pub mod sum;
pub mod verify;
pub mod zeta;

use thiserror::Error;

/// Unified error type for the whole pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve range [{lo}, {hi}) exceeds configured limit {limit}")]
    SieveCapacity { lo: f64, hi: f64, limit: u64 },

    #[error("invalid sieve range [{lo}, {hi})")]
    SieveRange { lo: f64, hi: f64 },

    #[error("iterated log undefined: intermediate value {value} <= 0 at depth {depth}")]
    IteratedLogDomain { value: f64, depth: u32 },

    #[error("no valid partition: log T = {log_t} below threshold {theta}")]
    NoValidPartition { log_t: f64, theta: f64 },

    #[error("degenerate partition: interval endpoints not ascending at j = {j} (T_{jm1} = {prev}, T_j = {next})", jm1 = j - 1)]
    DegeneratePartition { j: usize, prev: f64, next: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("zeta has a pole at s = 1")]
    ZetaPole,

    #[error("t = {0} below Riemann-Siegel range; use the Euler-Maclaurin evaluator")]
    UseEulerMaclaurin(f64),

    #[error("grid step {step} too coarse for T = {t} (limit {limit}); pass allow_coarse to override")]
    StepTooCoarse { step: f64, t: f64, limit: f64 },

    #[error("expanded series would hold ~{estimated} terms, cap is {cap}")]
    SeriesCapacity { estimated: f64, cap: usize },

    #[error("integer overflow while expanding coefficient support")]
    SupportOverflow,

    #[error("series supports are not pairwise coprime")]
    NotCoprime,

    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    #[error("per-node exponent {exponent} overflows double range at node {node}")]
    ExponentOverflow { exponent: f64, node: usize },

    #[error("{excluded} of {total} nodes below modulus floor; grid unusable for log statistics")]
    DataQuality { excluded: usize, total: usize },

    #[error("cache mismatch: {0}")]
    CacheMismatch(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
