//! Exact distributions: the height law of the breaking process and the
//! isolation time of a single stick.

mod height;
mod tau;

pub use height::{bst_expected_height, expected_height, height_cdf, HeightCdf, HeightTable};
pub use tau::{
    harmonic2_f64, harmonic_f64, record_count_pgf, tau_mean, tau_pgf, tau_pgf_capped, tau_pmf,
    tau_variance, HarmonicSums, TauPgf, DEFAULT_TAU_LIMIT,
};
