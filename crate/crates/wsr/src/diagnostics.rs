//! Archive-level aggregation: mean scores with undefined-score accounting,
//! and average score as a function of the interval-weight threshold.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fmt::sig_digits;
use crate::forecast::UnivariateCase;
use crate::score::ScoreValue;
use crate::uniscore::{owcrps_sample, twcrps_sample};
use crate::weights::{Chain, Weight};

/// Per-case scores plus summary statistics for a forecast archive.
#[derive(Debug, Clone)]
pub struct ScoreTable {
    /// 1-based case identifiers, in input order.
    pub case_ids: Vec<usize>,
    pub scores: Vec<ScoreValue>,
    pub n_undefined: usize,
    /// Arithmetic mean over defined entries only; NaN when none are defined.
    pub mean_defined: f64,
}

impl ScoreTable {
    /// Builds the table without insisting on any defined scores.
    pub fn from_scores(scores: Vec<ScoreValue>) -> Self {
        let (mean_defined, n_undefined) = aggregate(&scores);
        ScoreTable {
            case_ids: (1..=scores.len()).collect(),
            scores,
            n_undefined,
            mean_defined,
        }
    }

    pub fn n(&self) -> usize {
        self.scores.len()
    }

    pub fn n_defined(&self) -> usize {
        self.n() - self.n_undefined
    }

    /// Number of cases whose chaining function decreased on the sample grid.
    pub fn n_decreasing_chain(&self) -> usize {
        self.scores.iter().filter(|s| s.decreasing_chain).count()
    }
}

/// (mean over defined entries or NaN, count of undefined entries)
pub(crate) fn aggregate(scores: &[ScoreValue]) -> (f64, usize) {
    let mut sum = 0.0;
    let mut n_defined = 0usize;
    for s in scores {
        if s.is_defined() {
            sum += s.value;
            n_defined += 1;
        }
    }
    let mean = if n_defined > 0 {
        sum / n_defined as f64
    } else {
        f64::NAN
    };
    (mean, scores.len() - n_defined)
}

/// Summarizes per-case scores; undefined entries are counted, never
/// silently averaged. Errors when no score is defined.
pub fn summarize(scores: &[ScoreValue]) -> Result<ScoreTable> {
    let table = ScoreTable::from_scores(scores.to_vec());
    if table.n_defined() == 0 {
        return Err(Error::AllUndefined);
    }
    Ok(table)
}

/// Which score a threshold curve is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveScore {
    TwCrps,
    OwCrps,
}

/// Which side of the threshold the interval weight emphasises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdSide {
    /// w(z) = 1{z > t}, bounds (t, inf)
    Above,
    /// w(z) = 1{z < t}, bounds (-inf, t)
    Below,
}

/// Average score per threshold over a forecast archive.
#[derive(Debug, Clone)]
pub struct ThresholdCurve {
    pub thresholds: Vec<f64>,
    /// Mean over defined scores at each threshold; NaN when none defined.
    pub mean_scores: Vec<f64>,
    pub n_undefined: Vec<usize>,
    pub score: CurveScore,
    pub side: ThresholdSide,
}

impl ThresholdCurve {
    /// CSV rendering: `threshold,mean_score,n_undefined`, one row per grid
    /// point.
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::from("threshold,mean_score,n_undefined\n");
        for ((t, mean), undef) in self
            .thresholds
            .iter()
            .zip(&self.mean_scores)
            .zip(&self.n_undefined)
        {
            out.push_str(&format!(
                "{},{},{}\n",
                sig_digits(*t, digits),
                sig_digits(*mean, digits),
                undef
            ));
        }
        out
    }
}

/// Scores every case at every threshold with the one-sided interval weight
/// (owCRPS) or its clamp chain (twCRPS) and averages per threshold.
/// Thresholds must be finite and strictly increasing. All-undefined
/// thresholds are recorded, not fatal.
pub fn threshold_curve(
    cases: &[UnivariateCase],
    score: CurveScore,
    thresholds: &[f64],
    side: ThresholdSide,
) -> Result<ThresholdCurve> {
    if cases.is_empty() {
        return Err(Error::EmptyArchive);
    }
    if thresholds.is_empty() {
        return Err(Error::Config("threshold grid must not be empty".into()));
    }
    if thresholds.iter().any(|t| !t.is_finite()) {
        return Err(Error::Config("thresholds must be finite".into()));
    }
    if thresholds.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(
            "thresholds must be strictly increasing".into(),
        ));
    }

    let mut mean_scores = Vec::with_capacity(thresholds.len());
    let mut n_undefined = Vec::with_capacity(thresholds.len());
    for &t in thresholds {
        let (a, b) = match side {
            ThresholdSide::Above => (t, f64::INFINITY),
            ThresholdSide::Below => (f64::NEG_INFINITY, t),
        };
        let scores: Vec<ScoreValue> = match score {
            CurveScore::TwCrps => {
                let chain = Chain::interval(a, b)?;
                cases
                    .par_iter()
                    .map(|c| twcrps_sample(c.observation, &c.forecast, &chain))
                    .collect::<Result<_>>()?
            }
            CurveScore::OwCrps => {
                let weight = Weight::interval(a, b)?;
                cases
                    .par_iter()
                    .map(|c| owcrps_sample(c.observation, &c.forecast, &weight))
                    .collect::<Result<_>>()?
            }
        };
        let (mean, undef) = aggregate(&scores);
        mean_scores.push(mean);
        n_undefined.push(undef);
    }

    Ok(ThresholdCurve {
        thresholds: thresholds.to_vec(),
        mean_scores,
        n_undefined,
        score,
        side,
    })
}
