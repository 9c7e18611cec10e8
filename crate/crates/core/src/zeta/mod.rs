//! Evaluation of zeta(1/2 + it): Euler-Maclaurin reference, Riemann-Siegel
//! fast path, truncated-Dirichlet-sum oracle, and dense-grid machinery.

mod euler_maclaurin;
mod rs_tables;
mod grid;
mod riemann_siegel;

pub use euler_maclaurin::{zeta_em, DEFAULT_EM_TERMS};
pub use grid::{
    eval_zeta_grid, integrate_grid, integrate_grid_complex, read_grid_cache, write_grid_cache,
    zeta_partial_sum, GridMethod, ZetaGrid, DEFAULT_STEP,
};
pub use riemann_siegel::{
    correction_coefficient, correction_series, hardy_z, rs_theta, zeta_rs, ZRoute, MAX_CORRECTIONS, RS_ABS_MIN_T,
    RS_MIN_T,
};
