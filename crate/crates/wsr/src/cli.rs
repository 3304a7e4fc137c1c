//! Batch evaluation front-end shared by the `wsr` binary: configured
//! scoring of ingested archives, threshold curves, and deterministic
//! CSV/JSON rendering.

use clap::ValueEnum;
use rayon::prelude::*;

use crate::bounds::BoundsSpec;
use crate::diagnostics::{self, CurveScore, ScoreTable, ThresholdCurve, ThresholdSide};
use crate::error::{Error, Result};
use crate::fmt::{round_sig, sig_digits};
use crate::forecast::{MultivariateCase, UnivariateCase};
use crate::multiscore::{
    es_sample, mmds_sample, owes_sample, owmmds_sample, owvs_sample, twes_sample, twmmds_sample,
    twvs_sample, vs_sample, VsParams,
};
use crate::score::ScoreValue;
use crate::uniscore::{clogs_sample, crps_sample, logs_sample, owcrps_sample, twcrps_sample};
use crate::weights::{Chain, MultiChain, MultiWeight, Weight};

/// Every scoring rule the CLI can apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScoreKind {
    Crps,
    Logs,
    Twcrps,
    Owcrps,
    Cols,
    Cels,
    Es,
    Vs,
    Mmds,
    Owes,
    Owvs,
    Owmmds,
    Twes,
    Twvs,
    Twmmds,
}

impl ScoreKind {
    pub fn is_univariate(self) -> bool {
        matches!(
            self,
            ScoreKind::Crps
                | ScoreKind::Logs
                | ScoreKind::Twcrps
                | ScoreKind::Owcrps
                | ScoreKind::Cols
                | ScoreKind::Cels
        )
    }

    /// Threshold-weighted, outcome-weighted, or likelihood kinds take weight
    /// parameters; plain kinds do not.
    pub fn is_weighted(self) -> bool {
        !matches!(
            self,
            ScoreKind::Crps | ScoreKind::Logs | ScoreKind::Es | ScoreKind::Vs | ScoreKind::Mmds
        )
    }

    pub fn uses_bandwidth(self) -> bool {
        matches!(self, ScoreKind::Logs | ScoreKind::Cols | ScoreKind::Cels)
    }

    pub fn is_variogram(self) -> bool {
        matches!(self, ScoreKind::Vs | ScoreKind::Owvs | ScoreKind::Twvs)
    }

    fn is_likelihood(self) -> bool {
        matches!(self, ScoreKind::Cols | ScoreKind::Cels)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ScoreKind::Crps => "crps",
            ScoreKind::Logs => "logs",
            ScoreKind::Twcrps => "twcrps",
            ScoreKind::Owcrps => "owcrps",
            ScoreKind::Cols => "cols",
            ScoreKind::Cels => "cels",
            ScoreKind::Es => "es",
            ScoreKind::Vs => "vs",
            ScoreKind::Mmds => "mmds",
            ScoreKind::Owes => "owes",
            ScoreKind::Owvs => "owvs",
            ScoreKind::Owmmds => "owmmds",
            ScoreKind::Twes => "twes",
            ScoreKind::Twvs => "twvs",
            ScoreKind::Twmmds => "twmmds",
        }
    }
}

/// Built-in weight/chaining families exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightFamily {
    Interval,
    GaussCdf,
    GaussPdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Resolved configuration for a `score` run. Optional fields record whether
/// the user supplied the flag, which drives the per-kind validity checks.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub kind: ScoreKind,
    pub family: Option<WeightFamily>,
    pub a: Option<Vec<f64>>,
    pub b: Option<Vec<f64>>,
    pub mu: Option<Vec<f64>>,
    pub sigma: Option<Vec<f64>>,
    pub bandwidth: Option<f64>,
    pub vs_order: Option<f64>,
    pub vs_scaling: Option<Vec<Vec<f64>>>,
    pub member_weights: Option<Vec<Vec<f64>>>,
    pub format: OutputFormat,
    pub digits: usize,
    pub strict: bool,
}

impl RunConfig {
    pub fn new(kind: ScoreKind) -> Self {
        RunConfig {
            kind,
            family: None,
            a: None,
            b: None,
            mu: None,
            sigma: None,
            bandwidth: None,
            vs_order: None,
            vs_scaling: None,
            member_weights: None,
            format: OutputFormat::Csv,
            digits: 17,
            strict: false,
        }
    }

    fn family(&self) -> WeightFamily {
        self.family.unwrap_or(WeightFamily::Interval)
    }

    fn validate(&self) -> Result<()> {
        let kind = self.kind;
        if !kind.is_weighted()
            && (self.family.is_some()
                || self.a.is_some()
                || self.b.is_some()
                || self.mu.is_some()
                || self.sigma.is_some())
        {
            return Err(Error::Config(format!(
                "weight parameters are only valid for weighted score kinds, not '{}'",
                kind.as_str()
            )));
        }
        if self.bandwidth.is_some() && !kind.uses_bandwidth() {
            return Err(Error::Config(format!(
                "--bw is only valid for logs/cols/cels, not '{}'",
                kind.as_str()
            )));
        }
        if (self.vs_order.is_some() || self.vs_scaling.is_some()) && !kind.is_variogram() {
            return Err(Error::Config(format!(
                "--p and --vs-weights are only valid for variogram score kinds, not '{}'",
                kind.as_str()
            )));
        }
        if kind.is_likelihood() {
            if matches!(self.family(), WeightFamily::GaussCdf | WeightFamily::GaussPdf) {
                return Err(Error::Config(
                    "cols/cels support only the interval weight family".into(),
                ));
            }
            if self.mu.is_some() || self.sigma.is_some() {
                return Err(Error::Config(
                    "cols/cels take no --mu/--sigma parameters".into(),
                ));
            }
        }
        match self.family() {
            WeightFamily::Interval => {
                if self.mu.is_some() || self.sigma.is_some() {
                    return Err(Error::Config(
                        "--mu/--sigma require --weight-family gauss-cdf or gauss-pdf".into(),
                    ));
                }
            }
            WeightFamily::GaussCdf | WeightFamily::GaussPdf => {
                if self.a.is_some() || self.b.is_some() {
                    return Err(Error::Config(
                        "--a/--b apply to the interval family only".into(),
                    ));
                }
                if self.mu.is_none() || self.sigma.is_none() {
                    return Err(Error::Config(
                        "gaussian weight families need --mu and --sigma".into(),
                    ));
                }
            }
        }
        if self.digits == 0 || self.digits > 17 {
            return Err(Error::Config("--digits must be between 1 and 17".into()));
        }
        Ok(())
    }

    fn scalar(&self, field: &Option<Vec<f64>>, name: &str, default: f64) -> Result<f64> {
        match field {
            None => Ok(default),
            Some(values) if values.len() == 1 => Ok(values[0]),
            Some(_) => Err(Error::Config(format!(
                "univariate scores take a scalar {name}, not a list"
            ))),
        }
    }

    /// Broadcasts a scalar or per-dimension list to dimension d.
    fn per_dim(&self, field: &Option<Vec<f64>>, name: &str, default: f64, d: usize) -> Result<Vec<f64>> {
        match field {
            None => Ok(vec![default; d]),
            Some(values) if values.len() == 1 => Ok(vec![values[0]; d]),
            Some(values) if values.len() == d => Ok(values.clone()),
            Some(values) => Err(Error::Config(format!(
                "{name} has {} entries but the forecast dimension is {d}",
                values.len()
            ))),
        }
    }

    fn vs_params(&self) -> Result<VsParams> {
        let mut params = VsParams::new(self.vs_order.unwrap_or(0.5))?;
        if let Some(rows) = &self.vs_scaling {
            let flat: Vec<f64> = rows.iter().flatten().copied().collect();
            params = params.with_scaling(flat)?;
        }
        Ok(params)
    }

    fn uni_chain(&self) -> Result<Chain> {
        match self.family() {
            WeightFamily::Interval => Chain::interval(
                self.scalar(&self.a, "--a", f64::NEG_INFINITY)?,
                self.scalar(&self.b, "--b", f64::INFINITY)?,
            ),
            WeightFamily::GaussCdf => Chain::gauss_cdf(
                self.scalar(&self.mu, "--mu", 0.0)?,
                self.scalar(&self.sigma, "--sigma", 1.0)?,
            ),
            WeightFamily::GaussPdf => Chain::gauss_pdf(
                self.scalar(&self.mu, "--mu", 0.0)?,
                self.scalar(&self.sigma, "--sigma", 1.0)?,
            ),
        }
    }

    fn uni_weight(&self) -> Result<Weight> {
        match self.family() {
            WeightFamily::Interval => Weight::interval(
                self.scalar(&self.a, "--a", f64::NEG_INFINITY)?,
                self.scalar(&self.b, "--b", f64::INFINITY)?,
            ),
            WeightFamily::GaussCdf => Weight::gauss_cdf(
                self.scalar(&self.mu, "--mu", 0.0)?,
                self.scalar(&self.sigma, "--sigma", 1.0)?,
            ),
            WeightFamily::GaussPdf => Weight::gauss_pdf(
                self.scalar(&self.mu, "--mu", 0.0)?,
                self.scalar(&self.sigma, "--sigma", 1.0)?,
            ),
        }
    }

    fn multi_bounds(&self, d: usize) -> Result<BoundsSpec> {
        BoundsSpec::per_dim(
            self.per_dim(&self.a, "--a", f64::NEG_INFINITY, d)?,
            self.per_dim(&self.b, "--b", f64::INFINITY, d)?,
        )
    }

    fn multi_weight(&self, d: usize) -> Result<MultiWeight> {
        match self.family() {
            WeightFamily::Interval => Ok(MultiWeight::interval(self.multi_bounds(d)?)),
            WeightFamily::GaussCdf => {
                let mu = self.per_dim(&self.mu, "--mu", 0.0, d)?;
                let sigma = self.per_dim(&self.sigma, "--sigma", 1.0, d)?;
                let factors = mu
                    .iter()
                    .zip(&sigma)
                    .map(|(&m, &s)| Weight::gauss_cdf(m, s))
                    .collect::<Result<Vec<_>>>()?;
                MultiWeight::product(factors)
            }
            WeightFamily::GaussPdf => {
                let mu = self.per_dim(&self.mu, "--mu", 0.0, d)?;
                let sigma = self.per_dim(&self.sigma, "--sigma", 1.0, d)?;
                let factors = mu
                    .iter()
                    .zip(&sigma)
                    .map(|(&m, &s)| Weight::gauss_pdf(m, s))
                    .collect::<Result<Vec<_>>>()?;
                MultiWeight::product(factors)
            }
        }
    }

    fn multi_chain(&self, d: usize) -> Result<MultiChain> {
        match self.family() {
            WeightFamily::Interval => Ok(MultiChain::interval(self.multi_bounds(d)?)),
            WeightFamily::GaussCdf => {
                let mu = self.per_dim(&self.mu, "--mu", 0.0, d)?;
                let sigma = self.per_dim(&self.sigma, "--sigma", 1.0, d)?;
                let parts = mu
                    .iter()
                    .zip(&sigma)
                    .map(|(&m, &s)| Chain::gauss_cdf(m, s))
                    .collect::<Result<Vec<_>>>()?;
                MultiChain::componentwise(parts)
            }
            WeightFamily::GaussPdf => {
                let mu = self.per_dim(&self.mu, "--mu", 0.0, d)?;
                let sigma = self.per_dim(&self.sigma, "--sigma", 1.0, d)?;
                let parts = mu
                    .iter()
                    .zip(&sigma)
                    .map(|(&m, &s)| Chain::gauss_pdf(m, s))
                    .collect::<Result<Vec<_>>>()?;
                MultiChain::componentwise(parts)
            }
        }
    }
}

/// A parsed forecast archive, univariate or multivariate.
#[derive(Debug, Clone)]
pub enum Archive {
    Univariate(Vec<UnivariateCase>),
    Multivariate(Vec<MultivariateCase>),
}

impl Archive {
    pub fn len(&self) -> usize {
        match self {
            Archive::Univariate(cases) => cases.len(),
            Archive::Multivariate(cases) => cases.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn weight_row_for<'a>(rows: &'a [Vec<f64>], case_index: usize, n: usize) -> Result<&'a [f64]> {
    if rows.len() == 1 {
        Ok(&rows[0])
    } else if rows.len() == n {
        Ok(&rows[case_index])
    } else {
        Err(Error::Config(format!(
            "--member-weights must have 1 row or {} rows, got {}",
            n,
            rows.len()
        )))
    }
}

fn apply_member_weights(config: &RunConfig, archive: &Archive) -> Result<Archive> {
    let Some(rows) = &config.member_weights else {
        return Ok(archive.clone());
    };
    match archive {
        Archive::Univariate(cases) => {
            let n = cases.len();
            let reweighted = cases
                .iter()
                .enumerate()
                .map(|(i, case)| {
                    Ok(UnivariateCase {
                        observation: case.observation,
                        forecast: case.forecast.reweighted(weight_row_for(rows, i, n)?.to_vec())?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Archive::Univariate(reweighted))
        }
        Archive::Multivariate(cases) => {
            let n = cases.len();
            let reweighted = cases
                .iter()
                .enumerate()
                .map(|(i, case)| {
                    Ok(MultivariateCase {
                        observation: case.observation.clone(),
                        forecast: case.forecast.reweighted(weight_row_for(rows, i, n)?.to_vec())?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Archive::Multivariate(reweighted))
        }
    }
}

fn score_univariate(config: &RunConfig, cases: &[UnivariateCase]) -> Result<Vec<ScoreValue>> {
    let scorer: Box<dyn Fn(&UnivariateCase) -> Result<ScoreValue> + Sync> = match config.kind {
        ScoreKind::Crps => Box::new(|c| crps_sample(c.observation, &c.forecast)),
        ScoreKind::Logs => {
            let bw = config.bandwidth;
            Box::new(move |c| logs_sample(c.observation, &c.forecast, bw))
        }
        ScoreKind::Twcrps => {
            let chain = config.uni_chain()?;
            Box::new(move |c| twcrps_sample(c.observation, &c.forecast, &chain))
        }
        ScoreKind::Owcrps => {
            let weight = config.uni_weight()?;
            Box::new(move |c| owcrps_sample(c.observation, &c.forecast, &weight))
        }
        ScoreKind::Cols | ScoreKind::Cels => {
            let bounds = BoundsSpec::univariate(
                config.scalar(&config.a, "--a", f64::NEG_INFINITY)?,
                config.scalar(&config.b, "--b", f64::INFINITY)?,
            )?;
            let bw = config.bandwidth;
            let censored = config.kind == ScoreKind::Cels;
            Box::new(move |c| clogs_sample(c.observation, &c.forecast, &bounds, bw, censored))
        }
        _ => unreachable!("multivariate kind routed to score_univariate"),
    };
    cases.par_iter().map(|c| scorer(c)).collect()
}

fn score_multivariate(config: &RunConfig, cases: &[MultivariateCase]) -> Result<Vec<ScoreValue>> {
    let params = if config.kind.is_variogram() {
        Some(config.vs_params()?)
    } else {
        None
    };
    cases
        .par_iter()
        .map(|c| {
            let obs = c.observation.as_slice();
            let fc = &c.forecast;
            let d = fc.dim();
            match config.kind {
                ScoreKind::Es => es_sample(obs, fc),
                ScoreKind::Vs => vs_sample(obs, fc, params.as_ref().unwrap()),
                ScoreKind::Mmds => mmds_sample(obs, fc),
                ScoreKind::Owes => owes_sample(obs, fc, &config.multi_weight(d)?),
                ScoreKind::Owvs => {
                    owvs_sample(obs, fc, &config.multi_weight(d)?, params.as_ref().unwrap())
                }
                ScoreKind::Owmmds => owmmds_sample(obs, fc, &config.multi_weight(d)?),
                ScoreKind::Twes => twes_sample(obs, fc, &config.multi_chain(d)?),
                ScoreKind::Twvs => {
                    twvs_sample(obs, fc, &config.multi_chain(d)?, params.as_ref().unwrap())
                }
                ScoreKind::Twmmds => twmmds_sample(obs, fc, &config.multi_chain(d)?),
                _ => unreachable!("univariate kind routed to score_multivariate"),
            }
        })
        .collect()
}

/// Scores every case in the archive under the configuration. Cases are
/// scored in parallel; results keep input order and are bit-identical
/// across runs and thread counts.
pub fn run_score(config: &RunConfig, archive: &Archive) -> Result<ScoreTable> {
    config.validate()?;
    let archive = apply_member_weights(config, archive)?;
    let scores = match (&archive, config.kind.is_univariate()) {
        (Archive::Univariate(cases), true) => score_univariate(config, cases)?,
        (Archive::Multivariate(cases), false) => score_multivariate(config, cases)?,
        (Archive::Univariate(_), false) => {
            return Err(Error::Config(format!(
                "'{}' is a multivariate score but the archive is univariate",
                config.kind.as_str()
            )))
        }
        (Archive::Multivariate(_), true) => {
            return Err(Error::Config(format!(
                "'{}' is a univariate score but the archive is multivariate",
                config.kind.as_str()
            )))
        }
    };
    Ok(ScoreTable::from_scores(scores))
}

/// Configuration for a `curve` run.
#[derive(Debug, Clone)]
pub struct CurveConfig {
    pub score: CurveScore,
    pub side: ThresholdSide,
    pub thresholds: Vec<f64>,
    pub digits: usize,
    pub member_weights: Option<Vec<Vec<f64>>>,
}

/// Parses a `start:stop:step` grid specification into thresholds.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!(
            "grid must be start:stop:step, got '{spec}'"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("cannot parse grid component '{p}'")))
        })
        .collect::<Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !start.is_finite() || !stop.is_finite() || !step.is_finite() {
        return Err(Error::Config("grid components must be finite".into()));
    }
    if step <= 0.0 {
        return Err(Error::Config("grid step must be positive".into()));
    }
    if stop < start {
        return Err(Error::Config("grid stop must not be below start".into()));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

/// Scores the archive per threshold and returns the curve.
pub fn run_curve(config: &CurveConfig, cases: &[UnivariateCase]) -> Result<ThresholdCurve> {
    if config.digits == 0 || config.digits > 17 {
        return Err(Error::Config("--digits must be between 1 and 17".into()));
    }
    let cases = match &config.member_weights {
        None => cases.to_vec(),
        Some(rows) => {
            let n = cases.len();
            cases
                .iter()
                .enumerate()
                .map(|(i, case)| {
                    Ok(UnivariateCase {
                        observation: case.observation,
                        forecast: case
                            .forecast
                            .reweighted(weight_row_for(rows, i, n)?.to_vec())?,
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    diagnostics::threshold_curve(&cases, config.score, &config.thresholds, config.side)
}

/// CSV rendering of a score table: `case_id,score,status` rows followed by
/// one `#`-prefixed summary line.
pub fn render_score_csv(table: &ScoreTable, digits: usize) -> String {
    let mut out = String::from("case_id,score,status\n");
    for (id, score) in table.case_ids.iter().zip(&table.scores) {
        out.push_str(&format!(
            "{},{},{}\n",
            id,
            sig_digits(score.value, digits),
            score.status.as_str()
        ));
    }
    out.push_str(&format!(
        "# summary n={} n_defined={} n_undefined={} mean_defined={} decreasing_chain_warnings={}\n",
        table.n(),
        table.n_defined(),
        table.n_undefined,
        sig_digits(table.mean_defined, digits),
        table.n_decreasing_chain()
    ));
    out
}

/// JSON rendering of a score table. Undefined scores serialize as null.
pub fn render_score_json(table: &ScoreTable, digits: usize) -> String {
    let cases: Vec<serde_json::Value> = table
        .case_ids
        .iter()
        .zip(&table.scores)
        .map(|(id, score)| {
            let value = if score.is_defined() {
                serde_json::json!(round_sig(score.value, digits))
            } else {
                serde_json::Value::Null
            };
            serde_json::json!({
                "case_id": id,
                "score": value,
                "status": score.status.as_str(),
                "decreasing_chain": score.decreasing_chain,
            })
        })
        .collect();
    let mean = if table.mean_defined.is_nan() {
        serde_json::Value::Null
    } else {
        serde_json::json!(round_sig(table.mean_defined, digits))
    };
    let doc = serde_json::json!({
        "cases": cases,
        "summary": {
            "n": table.n(),
            "n_defined": table.n_defined(),
            "n_undefined": table.n_undefined,
            "mean_defined": mean,
            "decreasing_chain_warnings": table.n_decreasing_chain(),
        }
    });
    let mut out = doc.to_string();
    out.push('\n');
    out
}
