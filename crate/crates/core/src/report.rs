//! Result records shared by the evaluators.

use std::fmt;

use serde::Serialize;

/// How far a supremum estimate can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RatioStatus {
    /// The candidate ratios settled; `limit_sup` is reliable.
    Converged,
    /// No closed-form limit is available; `gap` is the difference between
    /// the last two candidate blocks.
    Unconverged { gap: f64 },
    /// Candidate ratios keep growing with the horizon.
    Divergent,
    /// Some candidate was never served within the horizon (infinite ratio).
    Unbounded,
    /// No candidate had a defined ratio.
    Empty,
}

impl fmt::Display for RatioStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioStatus::Converged => f.write_str("converged"),
            RatioStatus::Unconverged { .. } => f.write_str("unconverged"),
            RatioStatus::Divergent => f.write_str("divergent"),
            RatioStatus::Unbounded => f.write_str("unbounded"),
            RatioStatus::Empty => f.write_str("empty"),
        }
    }
}

/// Supremum estimate of a competitive or acceleration ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioReport {
    /// Largest candidate ratio within the horizon.
    pub finite_sup: f64,
    /// `max(finite_sup, limit)` for self-similar plans.
    pub limit_sup: Option<f64>,
    /// Ratio for distant targets / late interruptions.
    pub asymptotic: Option<f64>,
    /// Target distance or interruption time of the worst candidate.
    pub witness: f64,
    /// Candidate index (excursion or job) of the worst candidate.
    pub witness_index: usize,
    pub horizon: usize,
    pub status: RatioStatus,
}

impl RatioReport {
    /// `limit_sup` when known, otherwise `finite_sup`.
    pub fn sup(&self) -> f64 {
        self.limit_sup.unwrap_or(self.finite_sup)
    }
}

/// Monte Carlo estimate of an expectation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
    pub seed: u64,
}

impl McEstimate {
    /// Mean and standard error (sample standard deviation over `sqrt(n)`).
    pub fn from_samples(samples: &[f64], seed: u64) -> McEstimate {
        let n = samples.len();
        assert!(n >= 1, "at least one trial is required");
        let mean = samples.iter().sum::<f64>() / n as f64;
        let stderr = if n > 1 {
            let ss: f64 = samples.iter().map(|x| (x - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt()
        } else {
            0.0
        };
        McEstimate {
            mean,
            stderr,
            trials: n,
            seed,
        }
    }
}

/// How a measured value is compared with a published one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Relation {
    /// `|measured - paper| <= tol`.
    Equal(f64),
    MeasuredAtMost,
    MeasuredAtLeast,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Equal(tol) => {
                let shown: f64 = format!("{tol:.3e}").parse().map_err(|_| fmt::Error)?;
                write!(f, "equal({shown:e})")
            }
            Relation::MeasuredAtMost => f.write_str("at_most"),
            Relation::MeasuredAtLeast => f.write_str("at_least"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Verdict {
    Holds,
    /// Signed `measured - paper_value`.
    Violated(f64),
}

impl Verdict {
    /// Pure function of the three inputs.
    pub fn judge(paper_value: f64, measured: f64, relation: Relation) -> Verdict {
        let gap = measured - paper_value;
        let holds = match relation {
            Relation::Equal(tol) => gap.abs() <= tol,
            Relation::MeasuredAtMost => measured <= paper_value,
            Relation::MeasuredAtLeast => measured >= paper_value,
        };
        if holds {
            Verdict::Holds
        } else {
            Verdict::Violated(gap)
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// One published value checked against a simulator measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimCheck {
    pub claim_id: String,
    pub paper_value: f64,
    pub measured: f64,
    pub relation: Relation,
    pub verdict: Verdict,
    /// Recorded for reference only; never fails strict mode.
    pub informational: bool,
}

impl ClaimCheck {
    pub fn new(
        claim_id: impl Into<String>,
        paper_value: f64,
        measured: f64,
        relation: Relation,
    ) -> Self {
        ClaimCheck {
            claim_id: claim_id.into(),
            paper_value,
            measured,
            relation,
            verdict: Verdict::judge(paper_value, measured, relation),
            informational: false,
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn gap(&self) -> f64 {
        self.measured - self.paper_value
    }
}
