//! Weighted scoring rules for ensemble forecast verification.
//!
//! Scores sample-based probabilistic forecasts with proper scoring rules
//! and their outcome-weighted (ow) and threshold-weighted (tw) variants,
//! so evaluation can emphasise user-chosen outcomes such as extremes.
//!
//! Univariate rules: CRPS, LogS, twCRPS, owCRPS, and the conditional and
//! censored likelihood scores (CoLS/CeLS). Multivariate rules: energy
//! score, variogram score, and the Gaussian-kernel score (MMDS), each with
//! ow and tw variants. Weight emphasis comes from interval indicators,
//! Gaussian CDF/PDF families, or custom functions; threshold weighting
//! transforms data through the matching chaining function before unweighted
//! scoring.
//!
//! Lower scores are better. All scores take one forecast case at a time;
//! batch evaluation over archives lives in [`diagnostics`] and [`cli`], and
//! the `wsr` binary exposes the batch front-end on the command line.

pub mod bounds;
pub mod cli;
pub mod diagnostics;
pub mod error;
mod fmt;
pub mod forecast;
pub mod io;
pub mod kde;
pub mod multiscore;
pub mod score;
pub mod uniscore;
pub mod weights;

pub use bounds::BoundsSpec;
pub use error::{Error, Result};
pub use forecast::{
    normalize_member_weights, validate_multivariate_case, validate_univariate_case,
    EnsembleForecast, MultivariateCase, MultivariateEnsemble, UnivariateCase,
};
pub use kde::{default_bandwidth, KdeModel};
pub use multiscore::{
    es_sample, mmds_sample, owes_sample, owmmds_sample, owvs_sample, twes_sample, twmmds_sample,
    twvs_sample, vs_sample, VsParams,
};
pub use score::{ScoreStatus, ScoreValue};
pub use uniscore::{
    clogs_sample, crps_sample, crps_sample_naive, logs_sample, owcrps_sample, twcrps_sample,
};
pub use weights::{Chain, FamilyDescriptor, MultiChain, MultiWeight, Weight};

pub use diagnostics::{
    summarize, threshold_curve, CurveScore, ScoreTable, ThresholdCurve, ThresholdSide,
};
