//! Multivariate scoring rules on d-by-m ensembles: energy score, variogram
//! score, and the Gaussian-kernel score (MMDS), each with outcome-weighted
//! and threshold-weighted variants. One forecast case at a time; archive
//! batching lives in `diagnostics` and `cli`.

use crate::error::{Error, Result};
use crate::forecast::{validate_multivariate_case, MultivariateEnsemble};
use crate::score::ScoreValue;
use crate::weights::{MultiChain, MultiWeight};

/// Variogram score parameters: the order p and the optional d-by-d matrix of
/// nonnegative pairwise scaling weights (all ones when absent).
#[derive(Debug, Clone, PartialEq)]
pub struct VsParams {
    order: f64,
    scaling: Option<Vec<f64>>, // row-major d*d
}

impl Default for VsParams {
    fn default() -> Self {
        VsParams {
            order: 0.5,
            scaling: None,
        }
    }
}

impl VsParams {
    pub fn new(order: f64) -> Result<Self> {
        if !order.is_finite() || order <= 0.0 {
            return Err(Error::BadOrder(order));
        }
        Ok(VsParams {
            order,
            scaling: None,
        })
    }

    /// Attaches a row-major d-by-d scaling matrix; entries must be finite
    /// and nonnegative, and the length must be a perfect square.
    pub fn with_scaling(mut self, scaling: Vec<f64>) -> Result<Self> {
        if scaling.is_empty() {
            return Err(Error::BadVsWeights("empty scaling matrix".into()));
        }
        let d = (scaling.len() as f64).sqrt().round() as usize;
        if d * d != scaling.len() {
            return Err(Error::BadVsWeights(format!(
                "scaling matrix must be square, got {} entries",
                scaling.len()
            )));
        }
        if scaling.iter().any(|h| !h.is_finite() || *h < 0.0) {
            return Err(Error::BadVsWeights(
                "scaling entries must be finite and nonnegative".into(),
            ));
        }
        self.scaling = Some(scaling);
        Ok(self)
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if let Some(s) = &self.scaling {
            if s.len() != d * d {
                return Err(Error::BadVsWeights(format!(
                    "expected a {d}x{d} scaling matrix, got {} entries",
                    s.len()
                )));
            }
        }
        Ok(())
    }

    fn at(&self, i: usize, j: usize, d: usize) -> f64 {
        match &self.scaling {
            Some(s) => s[i * d + j],
            None => 1.0,
        }
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    squared_distance(a, b).sqrt()
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

fn member<'a>(data: &'a [f64], dim: usize, j: usize) -> &'a [f64] {
    &data[j * dim..(j + 1) * dim]
}

/// (sum_i u_i ||x_i - y||, sum_{i<j} u_i u_j ||x_i - x_j||)
fn energy_terms(data: &[f64], dim: usize, u: &[f64], obs: &[f64]) -> (f64, f64) {
    let m = u.len();
    let mut first = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        first += uj * euclidean(member(data, dim, j), obs);
    }
    let mut cross = 0.0;
    for i in 0..m {
        let xi = member(data, dim, i);
        let mut inner = 0.0;
        for j in (i + 1)..m {
            inner += u[j] * euclidean(xi, member(data, dim, j));
        }
        cross += u[i] * inner;
    }
    (first, cross)
}

fn energy_value(data: &[f64], dim: usize, weights: &[f64], obs: &[f64]) -> f64 {
    let (first, cross) = energy_terms(data, dim, weights, obs);
    // ES = first - 1/2 * (2 * cross); nonnegative, clip summation noise
    (first - cross).max(0.0)
}

/// Variogram score with effective member weights summing to one.
fn variogram_value(
    data: &[f64],
    dim: usize,
    eff_weights: &[f64],
    obs: &[f64],
    params: &VsParams,
) -> f64 {
    let p = params.order();
    let m = eff_weights.len();
    let mut total = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let h = params.at(i, j, dim);
            if h == 0.0 {
                continue;
            }
            let mut forecast_vario = 0.0;
            for (k, &wk) in eff_weights.iter().enumerate().take(m) {
                forecast_vario += wk * (data[k * dim + i] - data[k * dim + j]).abs().powf(p);
            }
            let diff = forecast_vario - (obs[i] - obs[j]).abs().powf(p);
            total += h * diff * diff;
        }
    }
    total
}

fn gauss_kernel(sq_dist: f64) -> f64 {
    (-0.5 * sq_dist).exp()
}

/// (sum_{i,j} u_i u_j k(x_i, x_j) including i = j, sum_i u_i k(x_i, y))
fn mmds_terms(data: &[f64], dim: usize, u: &[f64], obs: &[f64]) -> (f64, f64) {
    let m = u.len();
    let mut full = 0.0;
    for i in 0..m {
        let xi = member(data, dim, i);
        full += u[i] * u[i]; // k(x_i, x_i) = 1
        let mut inner = 0.0;
        for j in (i + 1)..m {
            inner += u[j] * gauss_kernel(squared_distance(xi, member(data, dim, j)));
        }
        full += 2.0 * u[i] * inner;
    }
    let mut obs_term = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        obs_term += uj * gauss_kernel(squared_distance(member(data, dim, j), obs));
    }
    (full, obs_term)
}

fn mmds_value(data: &[f64], dim: usize, weights: &[f64], obs: &[f64]) -> f64 {
    let (full, obs_term) = mmds_terms(data, dim, weights, obs);
    0.5 * full - obs_term
}

/// Energy score: sum_i wh_i ||x_i - y|| - 1/2 sum_{i,j} wh_i wh_j ||x_i - x_j||.
pub fn es_sample(obs: &[f64], fc: &MultivariateEnsemble) -> Result<ScoreValue> {
    validate_multivariate_case(obs, fc)?;
    Ok(ScoreValue::defined(energy_value(
        fc.flat(),
        fc.dim(),
        fc.member_weights(),
        obs,
    )))
}

/// Variogram score of order p with pairwise scaling weights h_ij.
pub fn vs_sample(
    obs: &[f64],
    fc: &MultivariateEnsemble,
    params: &VsParams,
) -> Result<ScoreValue> {
    validate_multivariate_case(obs, fc)?;
    params.check_dim(fc.dim())?;
    Ok(ScoreValue::defined(variogram_value(
        fc.flat(),
        fc.dim(),
        fc.member_weights(),
        obs,
        params,
    )))
}

/// Gaussian-kernel score: 1/2 E k(X, X') - E k(X, y); always in [-1, 1/2].
pub fn mmds_sample(obs: &[f64], fc: &MultivariateEnsemble) -> Result<ScoreValue> {
    validate_multivariate_case(obs, fc)?;
    Ok(ScoreValue::defined(mmds_value(
        fc.flat(),
        fc.dim(),
        fc.member_weights(),
        obs,
    )))
}

/// Shared preamble of the outcome-weighted scores: outcome weights per
/// member combined with member weights, w(y), and wbar. Returns an early
/// ScoreValue when w(y) = 0 (score 0) or wbar = 0 (undefined).
enum OwSetup {
    Early(ScoreValue),
    Go { u: Vec<f64>, wbar: f64, w_obs: f64 },
}

fn ow_setup(obs: &[f64], fc: &MultivariateEnsemble, weight: &MultiWeight) -> Result<OwSetup> {
    let mut u = Vec::with_capacity(fc.len());
    for (j, member) in fc.members().enumerate() {
        u.push(fc.member_weights()[j] * weight.eval(member)?);
    }
    let w_obs = weight.eval(obs)?;
    if w_obs == 0.0 {
        return Ok(OwSetup::Early(ScoreValue::defined(0.0)));
    }
    let wbar: f64 = u.iter().sum();
    if wbar == 0.0 {
        return Ok(OwSetup::Early(ScoreValue::undefined_weight_mass()));
    }
    Ok(OwSetup::Go { u, wbar, w_obs })
}

fn finish_weighted(value: f64, clip_nonnegative: bool) -> ScoreValue {
    if !value.is_finite() {
        // vanishing weight mass overflowed the normalization
        return ScoreValue::undefined_weight_mass();
    }
    if clip_nonnegative {
        ScoreValue::defined(value.max(0.0))
    } else {
        ScoreValue::defined(value)
    }
}

/// Outcome-weighted energy score.
pub fn owes_sample(
    obs: &[f64],
    fc: &MultivariateEnsemble,
    weight: &MultiWeight,
) -> Result<ScoreValue> {
    validate_multivariate_case(obs, fc)?;
    let (u, wbar, w_obs) = match ow_setup(obs, fc, weight)? {
        OwSetup::Early(score) => return Ok(score),
        OwSetup::Go { u, wbar, w_obs } => (u, wbar, w_obs),
    };
    let (first, cross) = energy_terms(fc.flat(), fc.dim(), &u, obs);
    let value = w_obs * (first / wbar - cross / (wbar * wbar));
    Ok(finish_weighted(value, true))
}

/// Outcome-weighted variogram score: the outer factor w(y) multiplies the
/// whole sum and the forecast variogram is the w-reweighted mean.
pub fn owvs_sample(
    obs: &[f64],
    fc: &MultivariateEnsemble,
    weight: &MultiWeight,
    params: &VsParams,
) -> Result<ScoreValue> {
    validate_multivariate_case(obs, fc)?;
    params.check_dim(fc.dim())?;
    let (u, wbar, w_obs) = match ow_setup(obs, fc, weight)? {
        OwSetup::Early(score) => return Ok(score),
        OwSetup::Go { u, wbar, w_obs } => (u, wbar, w_obs),
    };
    let eff: Vec<f64> = u.iter().map(|ui| ui / wbar).collect();
    let value = w_obs * variogram_value(fc.flat(), fc.dim(), &eff, obs, params);
    Ok(finish_weighted(value, true))
}

/// Outcome-weighted Gaussian-kernel score, with the weights multiplying the
/// kernel terms outside the exponential.
pub fn owmmds_sample(
    obs: &[f64],
    fc: &MultivariateEnsemble,
    weight: &MultiWeight,
) -> Result<ScoreValue> {
    validate_multivariate_case(obs, fc)?;
    let (u, wbar, w_obs) = match ow_setup(obs, fc, weight)? {
        OwSetup::Early(score) => return Ok(score),
        OwSetup::Go { u, wbar, w_obs } => (u, wbar, w_obs),
    };
    let (full, obs_term) = mmds_terms(fc.flat(), fc.dim(), &u, obs);
    let value = w_obs * (0.5 * full / (wbar * wbar) - obs_term / wbar);
    Ok(finish_weighted(value, false))
}

fn transform(
    obs: &[f64],
    fc: &MultivariateEnsemble,
    chain: &MultiChain,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut data = Vec::with_capacity(fc.len() * fc.dim());
    for member in fc.members() {
        data.extend_from_slice(&chain.eval(member)?);
    }
    let t_obs = chain.eval(obs)?;
    Ok((data, t_obs))
}

/// Threshold-weighted energy score: ES on chain-transformed members and
/// observation.
pub fn twes_sample(
    obs: &[f64],
    fc: &MultivariateEnsemble,
    chain: &MultiChain,
) -> Result<ScoreValue> {
    validate_multivariate_case(obs, fc)?;
    let (data, t_obs) = transform(obs, fc, chain)?;
    Ok(ScoreValue::defined(energy_value(
        &data,
        fc.dim(),
        fc.member_weights(),
        &t_obs,
    )))
}

/// Threshold-weighted variogram score.
pub fn twvs_sample(
    obs: &[f64],
    fc: &MultivariateEnsemble,
    chain: &MultiChain,
    params: &VsParams,
) -> Result<ScoreValue> {
    validate_multivariate_case(obs, fc)?;
    params.check_dim(fc.dim())?;
    let (data, t_obs) = transform(obs, fc, chain)?;
    Ok(ScoreValue::defined(variogram_value(
        &data,
        fc.dim(),
        fc.member_weights(),
        &t_obs,
        params,
    )))
}

/// Threshold-weighted Gaussian-kernel score.
pub fn twmmds_sample(
    obs: &[f64],
    fc: &MultivariateEnsemble,
    chain: &MultiChain,
) -> Result<ScoreValue> {
    validate_multivariate_case(obs, fc)?;
    let (data, t_obs) = transform(obs, fc, chain)?;
    Ok(ScoreValue::defined(mmds_value(
        &data,
        fc.dim(),
        fc.member_weights(),
        &t_obs,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BoundsSpec;
    use crate::forecast::EnsembleForecast;
    use crate::score::ScoreStatus;
    use crate::uniscore::crps_sample;

    fn mv(members: Vec<Vec<f64>>) -> MultivariateEnsemble {
        MultivariateEnsemble::from_members(members).unwrap()
    }

    #[test]
    fn es_one_dimensional_equals_crps() {
        let values = vec![0.4, -2.0, 1.1, 3.0, 0.0];
        let uni = EnsembleForecast::new(values.clone()).unwrap();
        let multi = mv(values.into_iter().map(|v| vec![v]).collect());
        let es = es_sample(&[0.2], &multi).unwrap().value;
        let crps = crps_sample(0.2, &uni).unwrap().value;
        assert!((es - crps).abs() < 1e-12);
    }

    #[test]
    fn es_single_member_is_distance() {
        let fc = mv(vec![vec![3.0, 4.0]]);
        let es = es_sample(&[0.0, 0.0], &fc).unwrap().value;
        assert!((es - 5.0).abs() < 1e-12);
    }

    #[test]
    fn es_hand_value() {
        // columns {(0,0),(1,1)}, y=(0,0): sqrt(2)/2 - sqrt(2)/4 = sqrt(2)/4
        let fc = mv(vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
        let es = es_sample(&[0.0, 0.0], &fc).unwrap().value;
        assert!((es - std::f64::consts::SQRT_2 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn vs_zero_scaling_gives_zero() {
        let fc = mv(vec![vec![0.0, 1.0], vec![2.0, -1.0]]);
        let params = VsParams::new(0.5)
            .unwrap()
            .with_scaling(vec![0.0; 4])
            .unwrap();
        assert_eq!(vs_sample(&[1.0, 1.0], &fc, &params).unwrap().value, 0.0);
    }

    #[test]
    fn vs_matching_variograms_give_zero() {
        let obs = vec![1.0, -2.0, 0.5];
        let fc = mv(vec![obs.clone(), obs.clone()]);
        let score = vs_sample(&obs, &fc, &VsParams::default()).unwrap().value;
        assert_eq!(score, 0.0);
    }

    #[test]
    fn vs_hand_value() {
        // d=2, p=0.5, h=1: forecast variogram 0, obs term sqrt(2) -> 2*2 = 4
        let fc = mv(vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
        let score = vs_sample(&[0.0, 2.0], &fc, &VsParams::default())
            .unwrap()
            .value;
        assert!((score - 4.0).abs() < 1e-12);
    }

    #[test]
    fn vs_rejects_bad_params() {
        assert!(matches!(VsParams::new(0.0), Err(Error::BadOrder(_))));
        assert!(matches!(VsParams::new(-1.0), Err(Error::BadOrder(_))));
        assert!(VsParams::new(0.5)
            .unwrap()
            .with_scaling(vec![1.0, -1.0, 1.0, 1.0])
            .is_err());
        assert!(VsParams::new(0.5).unwrap().with_scaling(vec![1.0; 3]).is_err());

        // shape mismatch against the ensemble dimension
        let fc = mv(vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
        let params = VsParams::new(0.5).unwrap().with_scaling(vec![1.0; 9]).unwrap();
        assert!(matches!(
            vs_sample(&[0.0, 0.0], &fc, &params),
            Err(Error::BadVsWeights(_))
        ));
    }

    #[test]
    fn mmds_point_mass_at_truth() {
        let fc = mv(vec![vec![1.0, -1.0], vec![1.0, -1.0]]);
        let score = mmds_sample(&[1.0, -1.0], &fc).unwrap().value;
        assert!((score - (-0.5)).abs() < 1e-15);
    }

    #[test]
    fn mmds_hand_value() {
        // columns {(0,0),(1,1)}, y=(0,0): -(1 + e^-1)/4
        let fc = mv(vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
        let score = mmds_sample(&[0.0, 0.0], &fc).unwrap().value;
        let expected = -(1.0 + (-1.0f64).exp()) / 4.0;
        assert!((score - expected).abs() < 1e-12);
    }

    #[test]
    fn mmds_far_observation() {
        let fc = mv(vec![vec![0.0, 0.0], vec![1.0, 0.0]]);
        let score = mmds_sample(&[100.0, 0.0], &fc).unwrap().value;
        // second term underflows to zero; only the positive first term remains
        let (full, _) = mmds_terms(fc.flat(), 2, fc.member_weights(), &[100.0, 0.0]);
        assert!(score > 0.0);
        assert!((score - 0.5 * full).abs() < 1e-15);
    }

    #[test]
    fn mmds_bounds() {
        let fc = mv(vec![vec![0.1, 2.0], vec![-3.0, 1.0], vec![0.0, 0.0]]);
        let score = mmds_sample(&[0.5, 0.5], &fc).unwrap().value;
        assert!(score >= -1.0 && score <= 0.5);
    }

    #[test]
    fn ow_unit_weight_reduces_to_unweighted() {
        let fc = mv(vec![vec![0.0, 1.0], vec![2.0, -1.0], vec![0.5, 0.5]]);
        let obs = [0.3, 0.4];
        let unit = MultiWeight::interval(BoundsSpec::unbounded(2));

        let es = es_sample(&obs, &fc).unwrap().value;
        let owes = owes_sample(&obs, &fc, &unit).unwrap().value;
        assert!((es - owes).abs() < 1e-12);

        let params = VsParams::default();
        let vs = vs_sample(&obs, &fc, &params).unwrap().value;
        let owvs = owvs_sample(&obs, &fc, &unit, &params).unwrap().value;
        assert!((vs - owvs).abs() < 1e-12);

        let mmds = mmds_sample(&obs, &fc).unwrap().value;
        let owmmds = owmmds_sample(&obs, &fc, &unit).unwrap().value;
        assert!((mmds - owmmds).abs() < 1e-12);
    }

    #[test]
    fn ow_zero_weight_observation_scores_zero() {
        let fc = mv(vec![vec![1.0, 1.0], vec![2.0, 2.0]]);
        // orthant z_i > 0; observation outside
        let weight = MultiWeight::interval(
            BoundsSpec::broadcast(0.0, f64::INFINITY, 2).unwrap(),
        );
        let obs = [-1.0, 5.0];
        assert_eq!(owes_sample(&obs, &fc, &weight).unwrap().value, 0.0);
        assert_eq!(
            owvs_sample(&obs, &fc, &weight, &VsParams::default())
                .unwrap()
                .value,
            0.0
        );
        assert_eq!(owmmds_sample(&obs, &fc, &weight).unwrap().value, 0.0);
    }

    #[test]
    fn ow_undefined_when_no_member_in_region() {
        let fc = mv(vec![vec![-1.0, -1.0], vec![-2.0, -0.5]]);
        let weight = MultiWeight::interval(
            BoundsSpec::broadcast(0.0, f64::INFINITY, 2).unwrap(),
        );
        let obs = [1.0, 1.0]; // inside region, forecast mass zero
        for score in [
            owes_sample(&obs, &fc, &weight).unwrap(),
            owvs_sample(&obs, &fc, &weight, &VsParams::default()).unwrap(),
            owmmds_sample(&obs, &fc, &weight).unwrap(),
        ] {
            assert_eq!(score.status, ScoreStatus::UndefinedWeightMass);
        }
    }

    #[test]
    fn owes_hand_value() {
        // columns {(0,0),(1,1),(2,2)}, y=(2,2), w = 1{both coords > 0}:
        // kept members {(1,1),(2,2)}, wbar = 2/3 -> sqrt(2)/4
        let fc = mv(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]);
        let weight = MultiWeight::interval(
            BoundsSpec::broadcast(0.0, f64::INFINITY, 2).unwrap(),
        );
        let score = owes_sample(&[2.0, 2.0], &fc, &weight).unwrap().value;
        assert!((score - std::f64::consts::SQRT_2 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn tw_identity_equals_unweighted_exactly() {
        let fc = mv(vec![vec![0.0, 1.0], vec![2.0, -1.0], vec![0.5, 0.5]]);
        let obs = [0.3, 0.4];
        let identity = MultiChain::identity();

        let es = es_sample(&obs, &fc).unwrap().value;
        let twes = twes_sample(&obs, &fc, &identity).unwrap().value;
        assert_eq!(es.to_bits(), twes.to_bits());

        let params = VsParams::default();
        let vs = vs_sample(&obs, &fc, &params).unwrap().value;
        let twvs = twvs_sample(&obs, &fc, &identity, &params).unwrap().value;
        assert_eq!(vs.to_bits(), twvs.to_bits());

        let mmds = mmds_sample(&obs, &fc).unwrap().value;
        let twmmds = twmmds_sample(&obs, &fc, &identity).unwrap().value;
        assert_eq!(mmds.to_bits(), twmmds.to_bits());
    }

    #[test]
    fn tw_equals_transform_then_score() {
        // clamp to (-inf, 0], the companion of the negative-orthant weight
        let bounds = BoundsSpec::broadcast(f64::NEG_INFINITY, 0.0, 2).unwrap();
        let chain = MultiChain::interval(bounds);
        let fc = mv(vec![vec![0.5, -1.0], vec![-2.0, 3.0], vec![1.0, 1.0]]);
        let obs: [f64; 2] = [0.25, -0.75];

        let clamped_members: Vec<Vec<f64>> = fc
            .members()
            .map(|x| x.iter().map(|&v| v.min(0.0)).collect())
            .collect();
        let clamped_obs: Vec<f64> = obs.iter().map(|&v| v.min(0.0)).collect();
        let transformed = mv(clamped_members);

        let tw = twes_sample(&obs, &fc, &chain).unwrap().value;
        let direct = es_sample(&clamped_obs, &transformed).unwrap().value;
        assert!((tw - direct).abs() < 1e-15);

        let tw = twmmds_sample(&obs, &fc, &chain).unwrap().value;
        let direct = mmds_sample(&clamped_obs, &transformed).unwrap().value;
        assert!((tw - direct).abs() < 1e-15);

        let params = VsParams::default();
        let tw = twvs_sample(&obs, &fc, &chain, &params).unwrap().value;
        let direct = vs_sample(&clamped_obs, &transformed, &params).unwrap().value;
        assert!((tw - direct).abs() < 1e-15);
    }

    #[test]
    fn tw_scalar_broadcast_equals_per_dim() {
        let fc = mv(vec![vec![0.0, 1.0, 2.0], vec![2.0, -1.0, 0.0]]);
        let obs = [0.3, 0.4, -0.2];
        let t = 0.25;
        let scalar = MultiChain::interval(BoundsSpec::broadcast(t, f64::INFINITY, 3).unwrap());
        let per_dim = MultiChain::interval(
            BoundsSpec::per_dim(vec![t; 3], vec![f64::INFINITY; 3]).unwrap(),
        );
        let a = twes_sample(&obs, &fc, &scalar).unwrap().value;
        let b = twes_sample(&obs, &fc, &per_dim).unwrap().value;
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn shift_invariance() {
        let fc = mv(vec![vec![0.0, 1.0], vec![2.0, -1.0], vec![0.5, 0.5]]);
        let obs = [0.3, 0.4];
        let shift = [7.5, -3.25];
        let shifted_fc = mv(fc
            .members()
            .map(|x| x.iter().zip(&shift).map(|(v, s)| v + s).collect())
            .collect());
        let shifted_obs: Vec<f64> = obs.iter().zip(&shift).map(|(v, s)| v + s).collect();

        let es0 = es_sample(&obs, &fc).unwrap().value;
        let es1 = es_sample(&shifted_obs, &shifted_fc).unwrap().value;
        assert!((es0 - es1).abs() < 1e-12);

        let mm0 = mmds_sample(&obs, &fc).unwrap().value;
        let mm1 = mmds_sample(&shifted_obs, &shifted_fc).unwrap().value;
        assert!((mm0 - mm1).abs() < 1e-12);

        // variogram differences are invariant under all-equal shifts only
        let const_shift = 7.5;
        let const_fc = mv(fc
            .members()
            .map(|x| x.iter().map(|v| v + const_shift).collect())
            .collect());
        let const_obs: Vec<f64> = obs.iter().map(|v| v + const_shift).collect();
        let params = VsParams::default();
        let vs0 = vs_sample(&obs, &fc, &params).unwrap().value;
        let vs1 = vs_sample(&const_obs, &const_fc, &params).unwrap().value;
        assert!((vs0 - vs1).abs() < 1e-12);
    }

    #[test]
    fn es_positive_homogeneity() {
        let fc = mv(vec![vec![0.0, 1.0], vec![2.0, -1.0]]);
        let obs = [0.3, 0.4];
        let c = 3.5;
        let scaled_fc = mv(fc
            .members()
            .map(|x| x.iter().map(|v| c * v).collect())
            .collect());
        let scaled_obs: Vec<f64> = obs.iter().map(|v| c * v).collect();
        let base = es_sample(&obs, &fc).unwrap().value;
        let scaled = es_sample(&scaled_obs, &scaled_fc).unwrap().value;
        assert!((scaled - c * base).abs() < 1e-12);
    }

    #[test]
    fn member_weights_flow_through() {
        // zero-weight member must not affect any score
        let with_dummy = MultivariateEnsemble::from_members_weighted(
            vec![vec![0.0, 1.0], vec![2.0, -1.0], vec![99.0, 99.0]],
            vec![1.0, 1.0, 0.0],
        )
        .unwrap();
        let without = mv(vec![vec![0.0, 1.0], vec![2.0, -1.0]]);
        let obs = [0.3, 0.4];
        let a = es_sample(&obs, &with_dummy).unwrap().value;
        let b = es_sample(&obs, &without).unwrap().value;
        assert!((a - b).abs() < 1e-12);

        let am = mmds_sample(&obs, &with_dummy).unwrap().value;
        let bm = mmds_sample(&obs, &without).unwrap().value;
        assert!((am - bm).abs() < 1e-12);
    }
}
