//! Search with probabilistic detection: each pass over the target reveals
//! it independently with probability `p`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_probability, check_rays, Error, Result};
use crate::limit::{summarize, Candidate};
use crate::numopt::lemma_root;
use crate::report::{McEstimate, RatioReport};
use crate::search_eval::{CandidateTargets, PassDirections, Target, Visits};
use crate::search_plan::{SearchPlan, SearchTag};

/// Default truncation threshold of the expected-cost series.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Hard cap on the number of series terms.
const MAX_TERMS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionModel {
    pub p: f64,
    pub direction_rule: PassDirections,
}

impl DetectionModel {
    pub fn new(p: f64, direction_rule: PassDirections) -> Result<Self> {
        check_probability(p)?;
        Ok(DetectionModel { p, direction_rule })
    }

    fn passes_per_round(&self) -> i32 {
        match self.direction_rule {
            PassDirections::BothDirections => 2,
            PassDirections::OutwardOnly => 1,
        }
    }

    /// Growth of the expected-cost terms from one round of the rays to the
    /// next, `b^m (1-p)` per counted pass, when the plan's shape is known.
    pub fn growth(&self, plan: &SearchPlan) -> Option<f64> {
        let m = plan.ray_count() as i32;
        let miss = (1.0 - self.p).powi(self.passes_per_round());
        match plan.tag() {
            SearchTag::Exponential { base } | SearchTag::NmSearch { base, .. } => {
                Some(base.powi(m) * miss)
            }
            // every point is passed exactly once
            SearchTag::Geometric { .. } => Some(if self.p < 1.0 { f64::INFINITY } else { 0.0 }),
            SearchTag::Custom => None,
        }
    }
}

/// Base `m / (m - rho)` with `rho` the root of the detection lemma.
pub fn detection_base(m: usize, p: f64) -> Result<f64> {
    check_rays(m)?;
    let rho = lemma_root(p)?;
    Ok(m as f64 / (m as f64 - rho))
}

/// Truncated expected-cost series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesCost {
    /// `+inf` when the series diverges.
    pub expected: f64,
    /// Bound on the neglected remainder.
    pub tail_bound: f64,
    pub terms: usize,
    pub bounded: bool,
}

impl SeriesCost {
    fn unbounded(terms: usize) -> Self {
        SeriesCost {
            expected: f64::INFINITY,
            tail_bound: f64::INFINITY,
            terms,
            bounded: false,
        }
    }
}

fn validate(model: &DetectionModel, target: Target, tail_tol: f64) -> Result<()> {
    check_probability(model.p)?;
    if !(target.distance > 0.0) {
        return Err(Error::InvalidParameter {
            name: "d",
            value: target.distance,
            reason: "target distance must be positive",
        });
    }
    if !(tail_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tail_tol",
            value: tail_tol,
            reason: "tolerance must be positive",
        });
    }
    Ok(())
}

/// `sum_k p (1-p)^(k-1) c_k` over the counted passes `c_1, c_2, ...`.
fn series(
    visits: impl Iterator<Item = f64>,
    model: &DetectionModel,
    growth: Option<f64>,
    tail_tol: f64,
) -> SeriesCost {
    if growth.is_some_and(|g| g >= 1.0) {
        return SeriesCost::unbounded(0);
    }
    let p = model.p;
    let q = 1.0 - p;
    // per-pass ratio of consecutive terms for known shapes
    let per_pass = growth.map(|g| g.powf(1.0 / model.passes_per_round() as f64));
    let mut sum = 0.0;
    let mut miss = 1.0;
    let mut last_term = 0.0;
    let mut terms = 0;
    for cost in visits.take(MAX_TERMS) {
        terms += 1;
        let term = p * miss * cost;
        if !term.is_finite() {
            return SeriesCost::unbounded(terms);
        }
        let ratio = per_pass.unwrap_or(if last_term > 0.0 {
            term / last_term
        } else {
            0.0
        });
        sum += term;
        miss *= q;
        last_term = term;
        if miss == 0.0 {
            return SeriesCost {
                expected: sum,
                tail_bound: 0.0,
                terms,
                bounded: true,
            };
        }
        if miss < tail_tol && ratio < 1.0 {
            let tail = term * ratio / (1.0 - ratio);
            if tail <= tail_tol * sum {
                return SeriesCost {
                    expected: sum,
                    tail_bound: tail,
                    terms,
                    bounded: true,
                };
            }
        }
    }
    // passes ran out (or the cap was hit) with probability mass left over
    SeriesCost::unbounded(terms)
}

/// Expected cost of finding `target` when each counted pass reveals it
/// with probability `p`.
pub fn expected_search_cost(
    plan: &SearchPlan,
    model: DetectionModel,
    target: Target,
    tail_tol: f64,
) -> Result<SeriesCost> {
    validate(&model, target, tail_tol)?;
    let visits = Visits::new(plan, target, model.direction_rule, usize::MAX).map(|v| v.cost);
    Ok(series(visits, &model, model.growth(plan), tail_tol))
}

/// Sup over the candidate targets `x_j + 0` of the expected cost over `d`.
pub fn probabilistic_competitive_ratio(
    plan: &SearchPlan,
    model: DetectionModel,
    horizon: usize,
) -> Result<RatioReport> {
    check_probability(model.p)?;
    let m = plan.ray_count();
    if horizon < m {
        return Err(Error::HorizonTooShort { horizon, min: m });
    }
    let growth = model.growth(plan);
    let targets = CandidateTargets::new(plan, horizon);
    let candidates: Vec<Candidate> = (0..horizon)
        .into_par_iter()
        .map(|j| {
            let d = targets.target(plan, j).distance;
            let visits = targets
                .visits(plan, j, model.direction_rule, usize::MAX)
                .map(|v| v.cost);
            let cost = series(visits, &model, growth, DEFAULT_TAIL_TOL);
            Candidate {
                index: j,
                ratio: cost.expected / d,
                witness: d,
            }
        })
        .collect();
    Ok(summarize(
        &candidates,
        plan.tag().self_similar_period(m),
        horizon,
    ))
}

/// Number of counted passes up to and including the first success.
fn passes_until_found(p: f64, rng: &mut ChaCha8Rng) -> usize {
    let mut k = 1;
    while rng.gen::<f64>() >= p {
        k += 1;
    }
    k
}

/// Monte Carlo estimate of [`expected_search_cost`]. Trial `i` draws from
/// stream `i` of the generator keyed by `seed`.
pub fn mc_search_cost(
    plan: &SearchPlan,
    model: DetectionModel,
    target: Target,
    trials: usize,
    seed: u64,
) -> Result<McEstimate> {
    validate(&model, target, DEFAULT_TAIL_TOL)?;
    if trials == 0 {
        return Err(Error::InvalidParameter {
            name: "trials",
            value: 0.0,
            reason: "at least one trial is required",
        });
    }
    let draws: Vec<usize> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            passes_until_found(model.p, &mut rng)
        })
        .collect();
    let deepest = draws.iter().copied().max().unwrap_or(1);
    let costs: Vec<f64> = Visits::new(plan, target, model.direction_rule, usize::MAX)
        .take(deepest)
        .map(|v| v.cost)
        .collect();
    let samples: Vec<f64> = draws
        .iter()
        .map(|&k| costs.get(k - 1).copied().unwrap_or(f64::INFINITY))
        .collect();
    Ok(McEstimate::from_samples(&samples, seed))
}
