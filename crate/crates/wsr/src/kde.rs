//! Gaussian kernel density estimation: mixture density, exact mixture CDF,
//! and the default bandwidth rule used by the likelihood scores.

use statrs::distribution::ContinuousCDF;
use statrs::distribution::Normal;

use crate::error::{Error, Result};
use crate::forecast::EnsembleForecast;

const INV_SQRT_2PI: f64 = 0.3989422804014327;

fn sample_sd(xs: &[f64]) -> f64 {
    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let ss = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    (ss / (m - 1.0)).sqrt()
}

/// Linear-interpolation quantile (type 7) of a sorted sample.
fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = (n as f64 - 1.0) * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

fn interquartile_range(xs: &[f64]) -> f64 {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    quantile_type7(&sorted, 0.75) - quantile_type7(&sorted, 0.25)
}

/// Silverman's rule of thumb: 0.9 * min(sd, IQR/1.34) * m^(-1/5), falling
/// back to sd when the IQR is zero. Needs m >= 2 and a non-degenerate
/// sample.
pub fn default_bandwidth(members: &[f64]) -> Result<f64> {
    let m = members.len();
    if m < 2 {
        return Err(Error::TooFewMembers(m));
    }
    let sd = sample_sd(members);
    let iqr = interquartile_range(members);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    if spread <= 0.0 {
        return Err(Error::DegenerateSample);
    }
    Ok(0.9 * spread * (m as f64).powf(-0.2))
}

/// A Gaussian mixture with one component per ensemble member. The density
/// integrates to one by construction and the CDF is evaluated analytically,
/// never by quadrature.
#[derive(Debug, Clone)]
pub struct KdeModel {
    centers: Vec<f64>,
    weights: Vec<f64>,
    bandwidth: f64,
    standard: Normal,
}

impl KdeModel {
    /// Builds the estimate from an ensemble; `bandwidth = None` selects the
    /// default rule.
    pub fn from_forecast(fc: &EnsembleForecast, bandwidth: Option<f64>) -> Result<Self> {
        let bandwidth = match bandwidth {
            Some(bw) => {
                if !bw.is_finite() || bw <= 0.0 {
                    return Err(Error::NonPositiveScale(bw));
                }
                bw
            }
            None => default_bandwidth(fc.members())?,
        };
        Ok(KdeModel {
            centers: fc.members().to_vec(),
            weights: fc.member_weights().to_vec(),
            bandwidth,
            standard: Normal::standard(),
        })
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Mixture density at z.
    pub fn density(&self, z: f64) -> f64 {
        let bw = self.bandwidth;
        self.centers
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| {
                let u = (z - x) / bw;
                w * INV_SQRT_2PI * (-0.5 * u * u).exp() / bw
            })
            .sum()
    }

    /// Mixture distribution function at z; exact 0 and 1 at -inf and inf.
    pub fn cdf(&self, z: f64) -> f64 {
        if z == f64::NEG_INFINITY {
            return 0.0;
        }
        if z == f64::INFINITY {
            return 1.0;
        }
        let bw = self.bandwidth;
        self.centers
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * self.standard.cdf((z - x) / bw))
            .sum()
    }

    /// Probability mass of the open interval (a, b), clipped to [0, 1].
    pub fn interval_mass(&self, a: f64, b: f64) -> f64 {
        (self.cdf(b) - self.cdf(a)).clamp(0.0, 1.0)
    }
}
