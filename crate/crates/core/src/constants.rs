//! Envelope constants used by the verification suites.
//!
//! The inequalities being tested hold with unspecified absolute constants;
//! the values here are deliberately generous instantiations so that a
//! failure indicates a bug rather than constant tuning. They are versioned
//! and emitted into every run manifest for auditability.

use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Constants {
    /// Relative slack for identities that are exact on the discrete grid
    /// (Hölder chain, Markov bound).
    pub exact_identity_rel: f64,
    /// Relative slack for exact coefficient-level identities (splitting,
    /// diagonal factorization, sandwich shares).
    pub exact_coefficient_rel: f64,
    /// Relative tolerance for the two mollifier representations.
    pub representation_rel: f64,
    /// Mean-value theorem envelope factor: ratio within 1 +- this times
    /// N log N / T.
    pub mvt_envelope_factor: f64,
    /// Relative envelope for the second-moment main-term oracle.
    pub second_moment_rel: f64,
    /// Relative envelope for twisted-first-moment vs diagonal main term.
    pub twisted_first_diag_rel: f64,
    /// Multiple of e^{-K_j} allowed for the majorant average.
    pub majorant_avg_factor: f64,
    /// Per-factor truncation error scale in the small-prime-sum branch:
    /// eps_j = this * (e/10)^{K_j} * (2 + 2/k).
    pub lemma1_eps_factor: f64,
    /// Absolute floating-point allowance added to eps_j (the analytic bound
    /// falls below double rounding once K_j is large).
    pub lemma1_fp_slack: f64,
    /// Factor multiplying 4^{1/k} Q_j(t) in the large-prime-sum branch.
    pub lemma1_majorant_slack: f64,
    /// Envelope for the normal-comparison variance ratio.
    pub clt_variance_ratio: (f64, f64),
    /// Maximum Kolmogorov-Smirnov distance at T = 1e6.
    pub clt_ks_max: f64,
    /// |mean| <= this * sqrt(predicted variance).
    pub clt_mean_factor: f64,
    /// Modulus floor below which grid nodes are excluded from log statistics.
    pub log_modulus_floor: f64,
    /// Fraction of excluded nodes above which log statistics error out.
    pub max_excluded_fraction: f64,
}

pub const CONSTANTS: Constants = Constants {
    exact_identity_rel: 1e-10,
    exact_coefficient_rel: 1e-12,
    representation_rel: 1e-9,
    mvt_envelope_factor: 10.0,
    second_moment_rel: 0.05,
    twisted_first_diag_rel: 0.25,
    majorant_avg_factor: 100.0,
    lemma1_eps_factor: 10.0,
    lemma1_fp_slack: 1e-12,
    lemma1_majorant_slack: 10.0,
    clt_variance_ratio: (0.6, 1.4),
    clt_ks_max: 0.15,
    clt_mean_factor: 0.2,
    log_modulus_floor: 1e-300,
    max_excluded_fraction: 0.01,
};
