//! Componentwise open-interval bounds with scalar broadcasting.

use crate::error::{Error, Result};

/// Lower/upper bounds (a, b), one pair per dimension, with a < b strictly.
/// Infinite bounds are allowed; scalars broadcast to every dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsSpec {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoundsSpec {
    /// Bounds for a one-dimensional outcome.
    pub fn univariate(a: f64, b: f64) -> Result<Self> {
        Self::per_dim(vec![a], vec![b])
    }

    /// Broadcasts scalar bounds to `dim` dimensions.
    pub fn broadcast(a: f64, b: f64, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("bounds dimension must be at least 1".into()));
        }
        Self::per_dim(vec![a; dim], vec![b; dim])
    }

    /// Bounds given per dimension; both vectors must have equal length.
    pub fn per_dim(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::Config("bounds dimension must be at least 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        for (&a, &b) in lower.iter().zip(&upper) {
            if a.is_nan() || b.is_nan() || !(a < b) {
                return Err(Error::InvalidBounds { lower: a, upper: b });
            }
        }
        Ok(BoundsSpec { lower, upper })
    }

    /// (-inf, inf) in every dimension.
    pub fn unbounded(dim: usize) -> Self {
        BoundsSpec {
            lower: vec![f64::NEG_INFINITY; dim.max(1)],
            upper: vec![f64::INFINITY; dim.max(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// True iff a_i < z_i < b_i for every dimension (strict on both sides).
    pub fn contains_strict(&self, z: &[f64]) -> bool {
        debug_assert_eq!(z.len(), self.dim());
        z.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(&zi, (&a, &b))| a < zi && zi < b)
    }

    /// Componentwise min(max(z_i, a_i), b_i).
    pub fn clamp_component(&self, i: usize, z: f64) -> f64 {
        z.max(self.lower[i]).min(self.upper[i])
    }
}
