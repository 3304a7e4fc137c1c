//! Score results: a value, a definedness status, and per-case warning flags.

/// Definedness of a computed score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreStatus {
    /// The score is a finite number.
    Defined,
    /// An outcome-weighted score whose forecast weight mass is zero while
    /// the observation carries positive weight; no finite value exists.
    UndefinedWeightMass,
    /// Reserved for inputs rejected before scoring.
    InvalidInput,
}

impl ScoreStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ScoreStatus::Defined => "defined",
            ScoreStatus::UndefinedWeightMass => "undefined_weight_mass",
            ScoreStatus::InvalidInput => "invalid_input",
        }
    }
}

/// One score for one forecast case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreValue {
    pub value: f64,
    pub status: ScoreStatus,
    /// Set when a custom chaining function was found to decrease on the
    /// pooled sample grid. Informational only; the value is unchanged.
    pub decreasing_chain: bool,
}

impl ScoreValue {
    pub fn defined(value: f64) -> Self {
        debug_assert!(value.is_finite(), "defined scores must be finite");
        ScoreValue {
            value,
            status: ScoreStatus::Defined,
            decreasing_chain: false,
        }
    }

    pub fn undefined_weight_mass() -> Self {
        ScoreValue {
            value: f64::NAN,
            status: ScoreStatus::UndefinedWeightMass,
            decreasing_chain: false,
        }
    }

    pub fn is_defined(&self) -> bool {
        self.status == ScoreStatus::Defined
    }

    pub(crate) fn with_decreasing_chain(mut self, flag: bool) -> Self {
        self.decreasing_chain = flag;
        self
    }
}
