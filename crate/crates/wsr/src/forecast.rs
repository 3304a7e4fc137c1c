//! Forecast data model: univariate and multivariate ensembles with optional
//! member weights, plus case validation.
//!
//! Observations are plain `f64` values (univariate) or `&[f64]` vectors
//! (multivariate); [`validate_univariate_case`] and
//! [`validate_multivariate_case`] check them against a forecast before any
//! scoring runs. Forecasts themselves are validated at construction, so a
//! successfully built ensemble is always safe to score.

use crate::error::{Error, Result};

/// Normalizes nonnegative member weights to sum to one.
pub fn normalize_member_weights(weights: &[f64]) -> Result<Vec<f64>> {
    if weights.is_empty() {
        return Err(Error::BadMemberWeights("empty weight vector"));
    }
    let mut sum = 0.0;
    for &w in weights {
        if !w.is_finite() {
            return Err(Error::BadMemberWeights("non-finite entry"));
        }
        if w < 0.0 {
            return Err(Error::BadMemberWeights("negative entry"));
        }
        sum += w;
    }
    if sum <= 0.0 {
        return Err(Error::BadMemberWeights("weights sum to zero"));
    }
    Ok(weights.iter().map(|w| w / sum).collect())
}

fn check_members_finite(values: &[f64], what: &'static str) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput(what));
    }
    Ok(())
}

/// An m-member univariate predictive sample. Member weights are normalized
/// to sum to one at construction; omitting them gives uniform weights.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleForecast {
    members: Vec<f64>,
    weights: Vec<f64>,
}

impl EnsembleForecast {
    /// Uniformly weighted ensemble.
    pub fn new(members: Vec<f64>) -> Result<Self> {
        Self::build(members, None)
    }

    /// Ensemble with explicit nonnegative member weights (length m, sum > 0).
    pub fn with_weights(members: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        Self::build(members, Some(weights))
    }

    fn build(members: Vec<f64>, weights: Option<Vec<f64>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        check_members_finite(&members, "ensemble members")?;
        let m = members.len();
        let weights = match weights {
            Some(w) => {
                if w.len() != m {
                    return Err(Error::BadMemberWeights("wrong length"));
                }
                normalize_member_weights(&w)?
            }
            None => vec![1.0 / m as f64; m],
        };
        Ok(EnsembleForecast { members, weights })
    }

    pub fn members(&self) -> &[f64] {
        &self.members
    }

    /// Normalized member weights; always sums to one within 1e-12.
    pub fn member_weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction enforces m >= 1
    }

    /// Same members under different weights.
    pub fn reweighted(&self, weights: Vec<f64>) -> Result<Self> {
        Self::with_weights(self.members.clone(), weights)
    }
}

/// A d-dimensional ensemble of m sampled forecast vectors.
///
/// Stored member-major: member j occupies the contiguous slice
/// `data[j*d .. (j+1)*d]`, i.e. column j of the d-by-m forecast matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MultivariateEnsemble {
    dim: usize,
    count: usize,
    data: Vec<f64>,
    weights: Vec<f64>,
}

impl MultivariateEnsemble {
    /// Builds from m member vectors, each of length d.
    pub fn from_members(members: Vec<Vec<f64>>) -> Result<Self> {
        Self::build_from_members(members, None)
    }

    /// Builds from m member vectors with explicit member weights.
    pub fn from_members_weighted(members: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        Self::build_from_members(members, Some(weights))
    }

    /// Builds from d dimension rows, each holding the m member values of one
    /// dimension (the d-by-m matrix layout, row i = dimension i).
    pub fn from_dimension_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::build_from_rows(rows, None)
    }

    pub fn from_dimension_rows_weighted(rows: &[Vec<f64>], weights: Vec<f64>) -> Result<Self> {
        Self::build_from_rows(rows, Some(weights))
    }

    fn build_from_members(members: Vec<Vec<f64>>, weights: Option<Vec<f64>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let dim = members[0].len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        let count = members.len();
        let mut data = Vec::with_capacity(dim * count);
        for member in &members {
            if member.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: member.len(),
                });
            }
            data.extend_from_slice(member);
        }
        Self::finish(dim, count, data, weights)
    }

    fn build_from_rows(rows: &[Vec<f64>], weights: Option<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        let count = rows[0].len();
        if count == 0 {
            return Err(Error::EmptyEnsemble);
        }
        for row in rows {
            if row.len() != count {
                return Err(Error::DimensionMismatch {
                    expected: count,
                    actual: row.len(),
                });
            }
        }
        let mut data = vec![0.0; dim * count];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                data[j * dim + i] = v;
            }
        }
        Self::finish(dim, count, data, weights)
    }

    fn finish(dim: usize, count: usize, data: Vec<f64>, weights: Option<Vec<f64>>) -> Result<Self> {
        check_members_finite(&data, "ensemble members")?;
        let weights = match weights {
            Some(w) => {
                if w.len() != count {
                    return Err(Error::BadMemberWeights("wrong length"));
                }
                normalize_member_weights(&w)?
            }
            None => vec![1.0 / count as f64; count],
        };
        Ok(MultivariateEnsemble {
            dim,
            count,
            data,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of members m.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Member j as a d-vector (column j of the forecast matrix).
    pub fn member(&self, j: usize) -> &[f64] {
        &self.data[j * self.dim..(j + 1) * self.dim]
    }

    pub fn members(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    /// Normalized member weights.
    pub fn member_weights(&self) -> &[f64] {
        &self.weights
    }

    pub(crate) fn flat(&self) -> &[f64] {
        &self.data
    }

    pub fn reweighted(&self, weights: Vec<f64>) -> Result<Self> {
        let weights = if weights.len() != self.count {
            return Err(Error::BadMemberWeights("wrong length"));
        } else {
            normalize_member_weights(&weights)?
        };
        Ok(MultivariateEnsemble {
            dim: self.dim,
            count: self.count,
            data: self.data.clone(),
            weights,
        })
    }
}

/// Checks an observation against a univariate forecast before scoring.
pub fn validate_univariate_case(obs: f64, _fc: &EnsembleForecast) -> Result<()> {
    if !obs.is_finite() {
        return Err(Error::NonFiniteInput("observation"));
    }
    Ok(())
}

/// Checks an observation vector against a multivariate forecast.
pub fn validate_multivariate_case(obs: &[f64], fc: &MultivariateEnsemble) -> Result<()> {
    if obs.len() != fc.dim() {
        return Err(Error::DimensionMismatch {
            expected: fc.dim(),
            actual: obs.len(),
        });
    }
    if obs.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput("observation"));
    }
    Ok(())
}

/// One univariate forecast case.
#[derive(Debug, Clone)]
pub struct UnivariateCase {
    pub observation: f64,
    pub forecast: EnsembleForecast,
}

/// One multivariate forecast case.
#[derive(Debug, Clone)]
pub struct MultivariateCase {
    pub observation: Vec<f64>,
    pub forecast: MultivariateEnsemble,
}
