//! Weight and chaining functions: the built-in families, componentwise
//! multivariate extensions, and adapters for caller-supplied functions.
//!
//! A weight function w maps outcomes to nonnegative emphasis values; a
//! chaining function v transforms outcomes before unweighted scoring. For
//! each built-in univariate family, v is an anti-derivative of w:
//!
//! * interval:  w(z) = 1{a < z < b},        v(z) = min(max(z, a), b)
//! * gauss-cdf: w(z) = Phi_{mu,sigma}(z),   v(z) = (z-mu) Phi(z) + sigma^2 phi(z)
//! * gauss-pdf: w(z) = phi_{mu,sigma}(z),   v(z) = Phi_{mu,sigma}(z)
//!
//! Interval boundaries are strict: w is 0 at z = a and z = b. Custom
//! functions are wrapped with runtime checks (nonnegative weights, matching
//! chain output dimension); they must be pure.

use std::fmt;
use std::sync::Arc;

use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::bounds::BoundsSpec;
use crate::error::{Error, Result};

/// Identifies the family a weight or chaining function was built from.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyDescriptor {
    Interval { lower: f64, upper: f64 },
    GaussCdf { mean: f64, sd: f64 },
    GaussPdf { mean: f64, sd: f64 },
    Product(Vec<FamilyDescriptor>),
    Custom,
}

type UniFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type MultiWFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type MultiCFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

fn gaussian(mean: f64, sd: f64) -> Result<Normal> {
    if !mean.is_finite() {
        return Err(Error::NonFiniteInput("gaussian mean"));
    }
    if !sd.is_finite() || sd <= 0.0 {
        return Err(Error::NonPositiveScale(sd));
    }
    Normal::new(mean, sd).map_err(|_| Error::NonPositiveScale(sd))
}

fn check_weight_output(w: f64, input: &[f64]) -> Result<()> {
    if !w.is_finite() {
        return Err(Error::NonFiniteFunctionOutput {
            input: input.to_vec(),
        });
    }
    if w < 0.0 {
        return Err(Error::NegativeWeight {
            input: input.to_vec(),
            value: w,
        });
    }
    Ok(())
}

/// A nonnegative univariate weight function w(z).
#[derive(Clone)]
pub struct Weight {
    descriptor: FamilyDescriptor,
    func: UniFn,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Weight").field(&self.descriptor).finish()
    }
}

impl Weight {
    /// w(z) = 1 iff a < z < b (strict on both ends), else 0.
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        BoundsSpec::univariate(a, b)?;
        Ok(Weight {
            descriptor: FamilyDescriptor::Interval { lower: a, upper: b },
            func: Arc::new(move |z| if a < z && z < b { 1.0 } else { 0.0 }),
        })
    }

    /// w = 1 everywhere; reduces every weighted score to its unweighted form.
    pub fn unit() -> Self {
        Self::interval(f64::NEG_INFINITY, f64::INFINITY).expect("infinite bounds are valid")
    }

    /// w(z) = Phi_{mu,sigma}(z), the Gaussian distribution function.
    pub fn gauss_cdf(mean: f64, sd: f64) -> Result<Self> {
        let normal = gaussian(mean, sd)?;
        Ok(Weight {
            descriptor: FamilyDescriptor::GaussCdf { mean, sd },
            func: Arc::new(move |z| normal.cdf(z)),
        })
    }

    /// w(z) = phi_{mu,sigma}(z), the Gaussian density.
    pub fn gauss_pdf(mean: f64, sd: f64) -> Result<Self> {
        let normal = gaussian(mean, sd)?;
        Ok(Weight {
            descriptor: FamilyDescriptor::GaussPdf { mean, sd },
            func: Arc::new(move |z| normal.pdf(z)),
        })
    }

    /// Wraps a caller-supplied weight function. Outputs are checked for
    /// nonnegativity at every evaluation.
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Weight {
            descriptor: FamilyDescriptor::Custom,
            func: Arc::new(f),
        }
    }

    pub fn descriptor(&self) -> &FamilyDescriptor {
        &self.descriptor
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        let w = (self.func)(z);
        check_weight_output(w, &[z])?;
        Ok(w)
    }

    /// Batch evaluation: k inputs produce k outputs.
    pub fn eval_batch(&self, zs: &[f64]) -> Result<Vec<f64>> {
        zs.iter().map(|&z| self.eval(z)).collect()
    }
}

/// A univariate chaining function v(z). Built-ins are non-decreasing;
/// custom chains are checked empirically at scoring time and flagged with a
/// warning if they decrease.
#[derive(Clone)]
pub struct Chain {
    descriptor: FamilyDescriptor,
    func: UniFn,
    known_monotone: bool,
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Chain").field(&self.descriptor).finish()
    }
}

impl Chain {
    /// v(z) = min(max(z, a), b), the clamp onto [a, b].
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        BoundsSpec::univariate(a, b)?;
        Ok(Chain {
            descriptor: FamilyDescriptor::Interval { lower: a, upper: b },
            func: Arc::new(move |z| z.max(a).min(b)),
            known_monotone: true,
        })
    }

    /// v(z) = z; reduces threshold-weighted scores to their unweighted form.
    pub fn identity() -> Self {
        Self::interval(f64::NEG_INFINITY, f64::INFINITY).expect("infinite bounds are valid")
    }

    /// v(z) = (z - mu) Phi_{mu,sigma}(z) + sigma^2 phi_{mu,sigma}(z),
    /// the anti-derivative of the Gaussian CDF weight.
    pub fn gauss_cdf(mean: f64, sd: f64) -> Result<Self> {
        let normal = gaussian(mean, sd)?;
        let var = sd * sd;
        Ok(Chain {
            descriptor: FamilyDescriptor::GaussCdf { mean, sd },
            func: Arc::new(move |z| (z - mean) * normal.cdf(z) + var * normal.pdf(z)),
            known_monotone: true,
        })
    }

    /// v(z) = Phi_{mu,sigma}(z), the anti-derivative of the Gaussian density
    /// weight.
    pub fn gauss_pdf(mean: f64, sd: f64) -> Result<Self> {
        let normal = gaussian(mean, sd)?;
        Ok(Chain {
            descriptor: FamilyDescriptor::GaussPdf { mean, sd },
            func: Arc::new(move |z| normal.cdf(z)),
            known_monotone: true,
        })
    }

    /// Wraps a caller-supplied chaining function.
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Chain {
            descriptor: FamilyDescriptor::Custom,
            func: Arc::new(f),
            known_monotone: false,
        }
    }

    pub fn descriptor(&self) -> &FamilyDescriptor {
        &self.descriptor
    }

    /// True for built-in families, which need no empirical monotonicity check.
    pub fn known_monotone(&self) -> bool {
        self.known_monotone
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        let v = (self.func)(z);
        if !v.is_finite() {
            return Err(Error::NonFiniteFunctionOutput { input: vec![z] });
        }
        Ok(v)
    }
}

/// A nonnegative weight function on d-dimensional outcomes.
#[derive(Clone)]
pub struct MultiWeight {
    descriptor: FamilyDescriptor,
    kind: MultiWeightKind,
}

#[derive(Clone)]
enum MultiWeightKind {
    Interval(BoundsSpec),
    Product(Vec<Weight>),
    Custom(MultiWFn),
}

impl fmt::Debug for MultiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("MultiWeight").field(&self.descriptor).finish()
    }
}

impl MultiWeight {
    /// Indicator of the open box a_i < z_i < b_i for all i.
    pub fn interval(bounds: BoundsSpec) -> Self {
        let descriptor = FamilyDescriptor::Product(
            bounds
                .lower()
                .iter()
                .zip(bounds.upper())
                .map(|(&a, &b)| FamilyDescriptor::Interval { lower: a, upper: b })
                .collect(),
        );
        MultiWeight {
            descriptor,
            kind: MultiWeightKind::Interval(bounds),
        }
    }

    /// w(z) = prod_i w_i(z_i) from d univariate factors.
    pub fn product(factors: Vec<Weight>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Config("product weight needs at least one factor".into()));
        }
        let descriptor =
            FamilyDescriptor::Product(factors.iter().map(|f| f.descriptor.clone()).collect());
        Ok(MultiWeight {
            descriptor,
            kind: MultiWeightKind::Product(factors),
        })
    }

    /// Wraps a caller-supplied vector-to-scalar weight function.
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        MultiWeight {
            descriptor: FamilyDescriptor::Custom,
            kind: MultiWeightKind::Custom(Arc::new(f)),
        }
    }

    pub fn descriptor(&self) -> &FamilyDescriptor {
        &self.descriptor
    }

    pub fn eval(&self, z: &[f64]) -> Result<f64> {
        match &self.kind {
            MultiWeightKind::Interval(bounds) => {
                if z.len() != bounds.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: bounds.dim(),
                        actual: z.len(),
                    });
                }
                Ok(if bounds.contains_strict(z) { 1.0 } else { 0.0 })
            }
            MultiWeightKind::Product(factors) => {
                if z.len() != factors.len() {
                    return Err(Error::DimensionMismatch {
                        expected: factors.len(),
                        actual: z.len(),
                    });
                }
                let mut w = 1.0;
                for (factor, &zi) in factors.iter().zip(z) {
                    w *= factor.eval(zi)?;
                }
                Ok(w)
            }
            MultiWeightKind::Custom(f) => {
                let w = f(z);
                check_weight_output(w, z)?;
                Ok(w)
            }
        }
    }
}

/// A chaining transform on d-dimensional outcomes. Built-ins act
/// componentwise; custom transforms must preserve the dimension.
#[derive(Clone)]
pub struct MultiChain {
    descriptor: FamilyDescriptor,
    kind: MultiChainKind,
}

#[derive(Clone)]
enum MultiChainKind {
    Identity,
    Interval(BoundsSpec),
    Componentwise(Vec<Chain>),
    Custom(MultiCFn),
}

impl fmt::Debug for MultiChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("MultiChain").field(&self.descriptor).finish()
    }
}

impl MultiChain {
    /// v(z) = z for any dimension.
    pub fn identity() -> Self {
        MultiChain {
            descriptor: FamilyDescriptor::Interval {
                lower: f64::NEG_INFINITY,
                upper: f64::INFINITY,
            },
            kind: MultiChainKind::Identity,
        }
    }

    /// Componentwise clamp v(z)_i = min(max(z_i, a_i), b_i); projects points
    /// outside the box onto its surface and fixes points inside it.
    pub fn interval(bounds: BoundsSpec) -> Self {
        let descriptor = FamilyDescriptor::Product(
            bounds
                .lower()
                .iter()
                .zip(bounds.upper())
                .map(|(&a, &b)| FamilyDescriptor::Interval { lower: a, upper: b })
                .collect(),
        );
        MultiChain {
            descriptor,
            kind: MultiChainKind::Interval(bounds),
        }
    }

    /// v(z)_i = v_i(z_i) from d univariate chains.
    pub fn componentwise(parts: Vec<Chain>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Config(
                "componentwise chain needs at least one part".into(),
            ));
        }
        let descriptor =
            FamilyDescriptor::Product(parts.iter().map(|p| p.descriptor.clone()).collect());
        Ok(MultiChain {
            descriptor,
            kind: MultiChainKind::Componentwise(parts),
        })
    }

    /// Wraps a caller-supplied vector-to-vector chaining function; output
    /// length must match the input length.
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        MultiChain {
            descriptor: FamilyDescriptor::Custom,
            kind: MultiChainKind::Custom(Arc::new(f)),
        }
    }

    pub fn descriptor(&self) -> &FamilyDescriptor {
        &self.descriptor
    }

    pub fn eval(&self, z: &[f64]) -> Result<Vec<f64>> {
        match &self.kind {
            MultiChainKind::Identity => Ok(z.to_vec()),
            MultiChainKind::Interval(bounds) => {
                if z.len() != bounds.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: bounds.dim(),
                        actual: z.len(),
                    });
                }
                Ok(z.iter()
                    .enumerate()
                    .map(|(i, &zi)| bounds.clamp_component(i, zi))
                    .collect())
            }
            MultiChainKind::Componentwise(parts) => {
                if z.len() != parts.len() {
                    return Err(Error::DimensionMismatch {
                        expected: parts.len(),
                        actual: z.len(),
                    });
                }
                parts.iter().zip(z).map(|(part, &zi)| part.eval(zi)).collect()
            }
            MultiChainKind::Custom(f) => {
                let out = f(z);
                if out.len() != z.len() {
                    return Err(Error::BadOutputShape {
                        expected: z.len(),
                        actual: out.len(),
                    });
                }
                if out.iter().any(|v| !v.is_finite()) {
                    return Err(Error::NonFiniteFunctionOutput { input: z.to_vec() });
                }
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INV_SQRT_2PI: f64 = 0.3989422804014327;

    #[test]
    fn interval_weight_is_strict() {
        let w = Weight::interval(0.0, f64::INFINITY).unwrap();
        assert_eq!(w.eval(1.0).unwrap(), 1.0);
        assert_eq!(w.eval(0.0).unwrap(), 0.0); // strict boundary
        assert_eq!(w.eval(-1.0).unwrap(), 0.0);

        let finite = Weight::interval(0.0, 2.0).unwrap();
        assert_eq!(finite.eval(2.0).unwrap(), 0.0);
        assert_eq!(finite.eval(1.9999).unwrap(), 1.0);
    }

    #[test]
    fn unbounded_interval_weight_is_one() {
        let w = Weight::unit();
        for z in [-1e15, -2.5, 0.0, 3.7, 1e15] {
            assert_eq!(w.eval(z).unwrap(), 1.0);
        }
    }

    #[test]
    fn multivariate_interval_weight() {
        let bounds =
            BoundsSpec::per_dim(vec![f64::NEG_INFINITY; 2], vec![0.0, 0.0]).unwrap();
        let w = MultiWeight::interval(bounds);
        assert_eq!(w.eval(&[-1.0, 1.0]).unwrap(), 0.0); // one coordinate outside
        assert_eq!(w.eval(&[-1.0, -1.0]).unwrap(), 1.0);
        assert!(matches!(
            w.eval(&[0.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn interval_chain_clamps() {
        let v = Chain::interval(2.0, f64::INFINITY).unwrap();
        assert_eq!(v.eval(1.0).unwrap(), 2.0);
        assert_eq!(v.eval(2.0).unwrap(), 2.0);
        assert_eq!(v.eval(3.0).unwrap(), 3.0);
    }

    #[test]
    fn identity_chain() {
        let v = Chain::identity();
        for z in [-1e300, -1.5, 0.0, 2.25, 1e300] {
            assert_eq!(v.eval(z).unwrap(), z);
        }
    }

    #[test]
    fn multivariate_clamp() {
        let bounds = BoundsSpec::per_dim(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let v = MultiChain::interval(bounds);
        assert_eq!(v.eval(&[-1.0, 2.0]).unwrap(), vec![0.0, 1.0]);
        assert_eq!(v.eval(&[0.5, 0.25]).unwrap(), vec![0.5, 0.25]);
    }

    #[test]
    fn interval_chain_idempotent() {
        let v = Chain::interval(-1.0, 2.0).unwrap();
        for z in [-5.0, -1.0, 0.0, 1.9, 2.0, 7.0] {
            let once = v.eval(z).unwrap();
            assert_eq!(v.eval(once).unwrap(), once);
        }
    }

    #[test]
    fn gauss_cdf_weight_at_mean() {
        let w = Weight::gauss_cdf(0.0, 1.0).unwrap();
        assert!((w.eval(0.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn gauss_cdf_chain_at_mean() {
        // v(mu) = sigma^2 phi(mu) = sigma / sqrt(2 pi) for sigma = 1
        let v = Chain::gauss_cdf(0.0, 1.0).unwrap();
        assert!((v.eval(0.0).unwrap() - INV_SQRT_2PI).abs() < 1e-15);
    }

    #[test]
    fn gauss_pdf_weight_at_mean() {
        let w = Weight::gauss_pdf(0.0, 1.0).unwrap();
        assert!((w.eval(0.0).unwrap() - INV_SQRT_2PI).abs() < 1e-15);
    }

    #[test]
    fn gauss_pdf_chain_limits() {
        let v = Chain::gauss_pdf(0.0, 1.0).unwrap();
        assert!(v.eval(-40.0).unwrap() < 1e-300);
        assert!(v.eval(40.0).unwrap() > 1.0 - 1e-12);
        // monotone on a coarse grid
        let mut last = f64::NEG_INFINITY;
        for i in 0..81 {
            let z = -4.0 + 0.1 * i as f64;
            let val = v.eval(z).unwrap();
            assert!(val >= last);
            last = val;
        }
    }

    #[test]
    fn non_positive_scale_rejected() {
        assert!(matches!(
            Weight::gauss_cdf(0.0, 0.0),
            Err(Error::NonPositiveScale(_))
        ));
        assert!(matches!(
            Chain::gauss_pdf(0.0, -1.0),
            Err(Error::NonPositiveScale(_))
        ));
    }

    fn central_diff(chain: &Chain, z: f64, h: f64) -> f64 {
        (chain.eval(z + h).unwrap() - chain.eval(z - h).unwrap()) / (2.0 * h)
    }

    #[test]
    fn gauss_cdf_chain_derivative_matches_weight() {
        let w = Weight::gauss_cdf(0.0, 1.0).unwrap();
        let v = Chain::gauss_cdf(0.0, 1.0).unwrap();
        for z in [-1.0, 0.0, 2.0] {
            let fd = central_diff(&v, z, 1e-5);
            assert!((fd - w.eval(z).unwrap()).abs() < 1e-6, "z={z} fd={fd}");
        }
    }

    #[test]
    fn gauss_pdf_chain_derivative_matches_weight() {
        let w = Weight::gauss_pdf(0.5, 2.0).unwrap();
        let v = Chain::gauss_pdf(0.5, 2.0).unwrap();
        for z in [-1.0, 0.0, 2.0] {
            let fd = central_diff(&v, z, 1e-5);
            assert!((fd - w.eval(z).unwrap()).abs() < 1e-6);
        }
    }

    // For every built-in pair, v' matches w to 1e-6 on a 100-point grid
    // spanning the family's natural range (interval kinks excluded).
    #[test]
    fn antiderivative_property_on_grids() {
        let cases: Vec<(Weight, Chain, f64, f64, Vec<f64>)> = vec![
            (
                Weight::gauss_cdf(0.0, 1.0).unwrap(),
                Chain::gauss_cdf(0.0, 1.0).unwrap(),
                -5.0,
                5.0,
                vec![],
            ),
            (
                Weight::gauss_cdf(2.0, 0.5).unwrap(),
                Chain::gauss_cdf(2.0, 0.5).unwrap(),
                -0.5,
                4.5,
                vec![],
            ),
            (
                Weight::gauss_pdf(0.0, 1.0).unwrap(),
                Chain::gauss_pdf(0.0, 1.0).unwrap(),
                -5.0,
                5.0,
                vec![],
            ),
            (
                Weight::gauss_pdf(-1.0, 3.0).unwrap(),
                Chain::gauss_pdf(-1.0, 3.0).unwrap(),
                -16.0,
                14.0,
                vec![],
            ),
            (
                Weight::interval(-1.0, 2.0).unwrap(),
                Chain::interval(-1.0, 2.0).unwrap(),
                -6.0,
                7.0,
                vec![-1.0, 2.0],
            ),
            (
                Weight::interval(0.0, f64::INFINITY).unwrap(),
                Chain::interval(0.0, f64::INFINITY).unwrap(),
                -5.0,
                10.0,
                vec![0.0],
            ),
            (
                Weight::interval(f64::NEG_INFINITY, 1.5).unwrap(),
                Chain::interval(f64::NEG_INFINITY, 1.5).unwrap(),
                -8.5,
                6.5,
                vec![1.5],
            ),
        ];
        for (w, v, lo, hi, kinks) in cases {
            let step = (hi - lo) / 99.0;
            for i in 0..100 {
                let z = lo + step * i as f64;
                if kinks.iter().any(|k| (z - k).abs() < 1e-3) {
                    continue;
                }
                let fd = central_diff(&v, z, 1e-5);
                let expected = w.eval(z).unwrap();
                assert!(
                    (fd - expected).abs() < 1e-6,
                    "family {:?} at z={z}: fd={fd} w={expected}",
                    w.descriptor()
                );
            }
        }
    }

    #[test]
    fn product_weight_of_intervals_equals_box() {
        let factors = vec![
            Weight::interval(0.0, f64::INFINITY).unwrap(),
            Weight::interval(0.0, f64::INFINITY).unwrap(),
        ];
        let product = MultiWeight::product(factors).unwrap();
        let boxed = MultiWeight::interval(BoundsSpec::broadcast(0.0, f64::INFINITY, 2).unwrap());
        for z in [[1.0, 2.0], [-1.0, 2.0], [0.0, 1.0], [3.0, -0.1]] {
            assert_eq!(product.eval(&z).unwrap(), boxed.eval(&z).unwrap());
        }
    }

    #[test]
    fn product_of_gauss_cdf_at_means() {
        let product = MultiWeight::product(vec![
            Weight::gauss_cdf(1.0, 1.0).unwrap(),
            Weight::gauss_cdf(-2.0, 0.5).unwrap(),
        ])
        .unwrap();
        assert!((product.eval(&[1.0, -2.0]).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn product_of_unit_weights_is_one() {
        let product = MultiWeight::product(vec![Weight::unit(); 4]).unwrap();
        assert_eq!(product.eval(&[1.0, -3.0, 0.0, 9.9]).unwrap(), 1.0);
    }

    #[test]
    fn componentwise_clamp_equals_broadcast_interval() {
        let parts = vec![
            Chain::interval(-1.0, 1.0).unwrap(),
            Chain::interval(-1.0, 1.0).unwrap(),
            Chain::interval(-1.0, 1.0).unwrap(),
        ];
        let cw = MultiChain::componentwise(parts).unwrap();
        let boxed = MultiChain::interval(BoundsSpec::broadcast(-1.0, 1.0, 3).unwrap());
        for z in [[0.0, 2.0, -5.0], [0.3, -0.3, 0.9]] {
            assert_eq!(cw.eval(&z).unwrap(), boxed.eval(&z).unwrap());
        }
    }

    #[test]
    fn custom_weight_checked_at_evaluation() {
        let square = Weight::custom(|x| x * x);
        assert_eq!(square.eval(3.0).unwrap(), 9.0);

        let negative = Weight::custom(|x| -x);
        assert!(matches!(
            negative.eval(1.0),
            Err(Error::NegativeWeight { .. })
        ));
        // negative inputs make -x positive, so those evaluate fine
        assert_eq!(negative.eval(-2.0).unwrap(), 2.0);
    }

    #[test]
    fn custom_weight_batch_contract() {
        let w = Weight::custom(|x| x.abs());
        let out = w.eval_batch(&[1.0, -2.0, 3.0]).unwrap();
        assert_eq!(out, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn custom_multichain_shape_checked() {
        let drops = MultiChain::custom(|z| z[..z.len() - 1].to_vec());
        assert!(matches!(
            drops.eval(&[1.0, 2.0]),
            Err(Error::BadOutputShape {
                expected: 2,
                actual: 1
            })
        ));

        let ok = MultiChain::custom(|z| z.iter().map(|&v| v.min(0.0)).collect());
        assert_eq!(ok.eval(&[1.0, -2.0]).unwrap(), vec![0.0, -2.0]);
    }

    #[test]
    fn custom_non_finite_outputs_rejected() {
        let bad_w = Weight::custom(|_| f64::NAN);
        assert!(matches!(
            bad_w.eval(0.0),
            Err(Error::NonFiniteFunctionOutput { .. })
        ));
        let bad_c = Chain::custom(|_| f64::INFINITY);
        assert!(matches!(
            bad_c.eval(0.0),
            Err(Error::NonFiniteFunctionOutput { .. })
        ));
    }
}
