//! Univariate scoring rules on ensemble forecasts: CRPS and LogS together
//! with their threshold-weighted, outcome-weighted, and likelihood-based
//! variants. Lower scores are better throughout.
//!
//! With normalized member weights wh_i, the empirical CRPS is
//!
//! ```text
//! CRPS = sum_i wh_i |x_i - y|  -  1/2 sum_{i,j} wh_i wh_j |x_i - x_j|
//! ```
//!
//! The pairwise double sum is evaluated in O(m log m) via prefix sums over
//! the sorted sample; a naive O(m^2) reference implementation is kept as an
//! independent check.

use crate::bounds::BoundsSpec;
use crate::error::Result;
use crate::forecast::{validate_univariate_case, EnsembleForecast};
use crate::kde::KdeModel;
use crate::score::ScoreValue;
use crate::weights::{Chain, Weight};

/// sum_{i,j} u_i u_j |x_i - x_j| via prefix sums over the sorted sample.
/// Weights need not be normalized.
fn weighted_pairwise_abs_sorted(values: &[f64], weights: &[f64]) -> f64 {
    let m = values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_unstable_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut acc = 0.0;
    let mut weight_below = 0.0;
    let mut weighted_sum_below = 0.0;
    for &k in &order {
        let (x, w) = (values[k], weights[k]);
        acc += w * (x * weight_below - weighted_sum_below);
        weight_below += w;
        weighted_sum_below += w * x;
    }
    2.0 * acc
}

/// Reference O(m^2) evaluation of the same double sum.
fn weighted_pairwise_abs_naive(values: &[f64], weights: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, &xi) in values.iter().enumerate() {
        let mut inner = 0.0;
        for (j, &xj) in values.iter().enumerate() {
            inner += weights[j] * (xi - xj).abs();
        }
        acc += weights[i] * inner;
    }
    acc
}

fn crps_from_values(values: &[f64], weights: &[f64], obs: f64) -> f64 {
    let first: f64 = values
        .iter()
        .zip(weights)
        .map(|(&x, &w)| w * (x - obs).abs())
        .sum();
    let second = weighted_pairwise_abs_sorted(values, weights);
    // nonnegative by construction; clip summation noise
    (first - 0.5 * second).max(0.0)
}

/// CRPS of an ensemble forecast (sort-based production path).
pub fn crps_sample(obs: f64, fc: &EnsembleForecast) -> Result<ScoreValue> {
    validate_univariate_case(obs, fc)?;
    Ok(ScoreValue::defined(crps_from_values(
        fc.members(),
        fc.member_weights(),
        obs,
    )))
}

/// CRPS via the naive double sum; the independent reference for the fast
/// path, kept available for tests and cross-checks.
pub fn crps_sample_naive(obs: f64, fc: &EnsembleForecast) -> Result<ScoreValue> {
    validate_univariate_case(obs, fc)?;
    let first: f64 = fc
        .members()
        .iter()
        .zip(fc.member_weights())
        .map(|(&x, &w)| w * (x - obs).abs())
        .sum();
    let second = weighted_pairwise_abs_naive(fc.members(), fc.member_weights());
    Ok(ScoreValue::defined((first - 0.5 * second).max(0.0)))
}

/// LogS of an ensemble forecast: -log of a Gaussian KDE density at the
/// observation. Densities below the smallest positive normal double are
/// clipped there, so the score stays finite.
pub fn logs_sample(obs: f64, fc: &EnsembleForecast, bandwidth: Option<f64>) -> Result<ScoreValue> {
    validate_univariate_case(obs, fc)?;
    let kde = KdeModel::from_forecast(fc, bandwidth)?;
    let density = kde.density(obs).max(f64::MIN_POSITIVE);
    Ok(ScoreValue::defined(-density.ln()))
}

/// True if the chain values decrease anywhere on the pooled sorted grid
/// {members} ∪ {obs}; reuses the evaluations already made for scoring.
fn decreases_on_pooled_grid(xs: &[f64], vs: &[f64], obs: f64, v_obs: f64) -> bool {
    let mut pairs: Vec<(f64, f64)> = xs.iter().copied().zip(vs.iter().copied()).collect();
    pairs.push((obs, v_obs));
    pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    pairs.windows(2).any(|w| w[1].1 < w[0].1)
}

/// Threshold-weighted CRPS: CRPS applied to chain-transformed members and
/// observation. A custom chain that decreases on the pooled sample grid
/// sets the `decreasing_chain` warning flag without altering the value.
pub fn twcrps_sample(obs: f64, fc: &EnsembleForecast, chain: &Chain) -> Result<ScoreValue> {
    validate_univariate_case(obs, fc)?;
    let members = fc.members();
    let mut transformed = Vec::with_capacity(members.len());
    for &x in members {
        transformed.push(chain.eval(x)?);
    }
    let v_obs = chain.eval(obs)?;
    let decreasing = if chain.known_monotone() {
        false
    } else {
        decreases_on_pooled_grid(members, &transformed, obs, v_obs)
    };
    let value = crps_from_values(&transformed, fc.member_weights(), v_obs);
    Ok(ScoreValue::defined(value).with_decreasing_chain(decreasing))
}

/// Outcome-weighted CRPS. With u_i = wh_i w(x_i) and wbar = sum_i u_i:
///
/// ```text
/// owCRPS = w(y)/wbar sum_i u_i |x_i - y|
///        - w(y)/(2 wbar^2) sum_{i,j} u_i u_j |x_i - x_j|
/// ```
///
/// If w(y) = 0 the score is exactly 0. If w(y) > 0 and wbar = 0 no finite
/// value exists and the status is `UndefinedWeightMass`.
pub fn owcrps_sample(obs: f64, fc: &EnsembleForecast, weight: &Weight) -> Result<ScoreValue> {
    validate_univariate_case(obs, fc)?;
    let members = fc.members();
    let outcome_weights = weight.eval_batch(members)?;
    let w_obs = weight.eval(obs)?;
    if w_obs == 0.0 {
        return Ok(ScoreValue::defined(0.0));
    }
    let u: Vec<f64> = fc
        .member_weights()
        .iter()
        .zip(&outcome_weights)
        .map(|(&wh, &w)| wh * w)
        .collect();
    let wbar: f64 = u.iter().sum();
    if wbar == 0.0 {
        return Ok(ScoreValue::undefined_weight_mass());
    }
    let first: f64 = members
        .iter()
        .zip(&u)
        .map(|(&x, &ui)| ui * (x - obs).abs())
        .sum();
    let second = weighted_pairwise_abs_sorted(members, &u);
    let value = w_obs * (first / wbar - 0.5 * second / (wbar * wbar));
    if !value.is_finite() {
        // vanishing weight mass overflowed the normalization
        return Ok(ScoreValue::undefined_weight_mass());
    }
    Ok(ScoreValue::defined(value.max(0.0)))
}

/// Conditional (CoLS) and censored (CeLS) likelihood scores for the
/// interval weight w(z) = 1{a < z < b}, using a Gaussian KDE density and
/// its exact mixture CDF. `censored = true` selects the CeLS.
///
/// With P the forecast mass of (a, b):
/// * y inside (a, b): CoLS = -log f(y) + log P, CeLS = -log f(y)
/// * y outside:       CoLS = 0,                 CeLS = -log(1 - P)
pub fn clogs_sample(
    obs: f64,
    fc: &EnsembleForecast,
    bounds: &BoundsSpec,
    bandwidth: Option<f64>,
    censored: bool,
) -> Result<ScoreValue> {
    validate_univariate_case(obs, fc)?;
    if bounds.dim() != 1 {
        return Err(crate::error::Error::DimensionMismatch {
            expected: 1,
            actual: bounds.dim(),
        });
    }
    let (a, b) = (bounds.lower()[0], bounds.upper()[0]);
    let kde = KdeModel::from_forecast(fc, bandwidth)?;
    let inside = a < obs && obs < b;
    let value = if censored {
        if inside {
            -kde.density(obs).max(f64::MIN_POSITIVE).ln()
        } else {
            let outside_mass = 1.0 - kde.interval_mass(a, b);
            -outside_mass.max(f64::MIN_POSITIVE).ln()
        }
    } else if inside {
        let mass = kde.interval_mass(a, b);
        -kde.density(obs).max(f64::MIN_POSITIVE).ln() + mass.max(f64::MIN_POSITIVE).ln()
    } else {
        0.0
    };
    Ok(ScoreValue::defined(value))
}
