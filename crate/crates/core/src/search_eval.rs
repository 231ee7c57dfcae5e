//! Adversarial evaluation of search plans.
//!
//! The evaluator replays the searcher's walk leg by leg. A pass over a
//! target is counted in either direction; an outward leg reaches a point at
//! distance `d` when it arrives there, an inward leg when it leaves it
//! behind. Under the expanding cost model a newly explored segment is
//! credited when its extension ends, so every point of the segment is
//! charged the cost at that turn point.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{check_base, Error, Result};
use crate::limit::{summarize, Candidate};
use crate::report::RatioReport;
use crate::search_plan::{CostModel, SearchPlan, SearchTag, Traversal};

/// Default number of candidate excursions in a sweep.
pub const DEFAULT_HORIZON: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchSemantics {
    FirstVisit,
    /// The target is located on its `r`-th pass.
    RthVisit(u32),
}

impl SearchSemantics {
    pub fn visits_required(&self) -> u32 {
        match *self {
            SearchSemantics::FirstVisit => 1,
            SearchSemantics::RthVisit(r) => r.max(1),
        }
    }
}

/// Which passes give the searcher a chance to see the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PassDirections {
    BothDirections,
    /// Only passes moving away from the origin count.
    OutwardOnly,
}

/// Where exactly the target sits relative to `distance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TargetSide {
    At,
    /// Arbitrarily close to `distance` from above: the right limit.
    JustBeyond,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Target {
    pub ray: usize,
    pub distance: f64,
    pub side: TargetSide,
}

impl Target {
    pub fn at(ray: usize, distance: f64) -> Target {
        Target {
            ray,
            distance,
            side: TargetSide::At,
        }
    }

    pub fn just_beyond(ray: usize, distance: f64) -> Target {
        Target {
            ray,
            distance,
            side: TargetSide::JustBeyond,
        }
    }
}

/// A pass of the searcher over the target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Visit {
    /// Total distance charged when the pass happens.
    pub cost: f64,
    pub excursion: usize,
    pub outward: bool,
}

/// Result of looking for the `k`-th pass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum VisitOutcome {
    Visited(Visit),
    /// The horizon ran out after `scanned` excursions and `seen` passes.
    Unreached {
        scanned: usize,
        seen: usize,
    },
}

impl VisitOutcome {
    /// Cost of the pass, `+inf` when unreached.
    pub fn cost(&self) -> f64 {
        match self {
            VisitOutcome::Visited(v) => v.cost,
            VisitOutcome::Unreached { .. } => f64::INFINITY,
        }
    }
}

/// Successive passes over a target, in walk order.
pub struct Visits<'a> {
    plan: &'a SearchPlan,
    target: Target,
    directions: PassDirections,
    next_excursion: usize,
    limit: usize,
    cumulative: f64,
    pending: VecDeque<Visit>,
}

impl<'a> Visits<'a> {
    pub fn new(
        plan: &'a SearchPlan,
        target: Target,
        directions: PassDirections,
        max_excursions: usize,
    ) -> Self {
        Visits {
            plan,
            target,
            directions,
            next_excursion: 0,
            limit: max_excursions,
            cumulative: 0.0,
            pending: VecDeque::new(),
        }
    }

    /// Start scanning at excursion `start`, given the total cost of the
    /// excursions before it. Only sound when no earlier excursion passes the
    /// target.
    pub(crate) fn resume_at(mut self, start: usize, cost_before: f64) -> Self {
        self.next_excursion = start;
        self.cumulative = cost_before;
        self
    }

    /// Number of excursions replayed so far.
    pub fn scanned(&self) -> usize {
        self.next_excursion
    }

    fn replay(&mut self, i: usize) {
        let plan = self.plan;
        let e = plan.excursion(i);
        if e.ray != self.target.ray {
            self.cumulative += plan.excursion_cost(i);
            return;
        }
        let d = self.target.distance;
        let beyond = self.target.side == TargetSide::JustBeyond;
        if plan.cost_model() == CostModel::Expanding {
            let covered = if beyond {
                e.depth_inner <= d && d < e.depth_outer
            } else {
                e.depth_inner < d && d <= e.depth_outer
            };
            self.cumulative += plan.excursion_cost(i);
            if covered {
                self.pending.push_back(Visit {
                    cost: self.cumulative,
                    excursion: i,
                    outward: true,
                });
            }
            return;
        }
        for leg in plan.legs(i) {
            let outward = leg.to > leg.from;
            let passes = match (outward, beyond) {
                (true, false) => leg.from < d && d <= leg.to,
                (true, true) => leg.from <= d && d < leg.to,
                (false, _) => leg.to <= d && d < leg.from,
            };
            let counted = outward || self.directions == PassDirections::BothDirections;
            if passes && counted {
                self.pending.push_back(Visit {
                    cost: self.cumulative + (d - leg.from).abs(),
                    excursion: i,
                    outward,
                });
            }
            self.cumulative += leg.charge;
        }
    }
}

impl Iterator for Visits<'_> {
    type Item = Visit;

    fn next(&mut self) -> Option<Visit> {
        while self.pending.is_empty() {
            if self.next_excursion >= self.limit {
                return None;
            }
            let i = self.next_excursion;
            self.next_excursion += 1;
            self.replay(i);
        }
        self.pending.pop_front()
    }
}

/// Cost of the `k`-th pass over `target`, replaying at most `horizon`
/// excursions.
pub fn cost_to_visit(
    plan: &SearchPlan,
    target: Target,
    k: u32,
    horizon: usize,
) -> Result<VisitOutcome> {
    if !(target.distance > 0.0) {
        return Err(Error::InvalidParameter {
            name: "d",
            value: target.distance,
            reason: "target distance must be positive",
        });
    }
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            value: 0.0,
            reason: "visit ordinal starts at 1",
        });
    }
    if target.ray >= plan.ray_count() {
        return Err(Error::InvalidParameter {
            name: "ray",
            value: target.ray as f64,
            reason: "ray index out of range",
        });
    }
    let mut visits = Visits::new(plan, target, PassDirections::BothDirections, horizon);
    let mut seen = 0;
    for visit in visits.by_ref() {
        seen += 1;
        if seen == k as usize {
            return Ok(VisitOutcome::Visited(visit));
        }
    }
    Ok(VisitOutcome::Unreached {
        scanned: visits.scanned(),
        seen,
    })
}

/// Worst-case candidate targets of a sweep: just beyond each turn point.
pub(crate) struct CandidateTargets {
    /// `prefix[i]` is the total cost of excursions `0..i`.
    prefix: Vec<f64>,
    monotone: bool,
}

impl CandidateTargets {
    pub(crate) fn new(plan: &SearchPlan, count: usize) -> Self {
        let mut prefix = Vec::with_capacity(count + 1);
        let mut total = 0.0;
        prefix.push(0.0);
        for i in 0..count {
            total += plan.excursion_cost(i);
            prefix.push(total);
        }
        CandidateTargets {
            prefix,
            monotone: !matches!(plan.tag(), SearchTag::Custom),
        }
    }

    pub(crate) fn target(&self, plan: &SearchPlan, j: usize) -> Target {
        let e = plan.excursion(j);
        Target::just_beyond(e.ray, e.depth_outer)
    }

    /// Pass iterator for candidate `j`, skipping excursions that cannot
    /// reach beyond `x_j` on monotone plans.
    pub(crate) fn visits<'a>(
        &self,
        plan: &'a SearchPlan,
        j: usize,
        directions: PassDirections,
        max_excursions: usize,
    ) -> Visits<'a> {
        let visits = Visits::new(plan, self.target(plan, j), directions, max_excursions);
        if self.monotone {
            visits.resume_at(j, self.prefix[j])
        } else {
            visits
        }
    }
}

/// Competitive ratio over the candidate targets `x_j + 0` for
/// `j < horizon`. Self-similar plans additionally report the limit of the
/// candidate ratios.
pub fn competitive_ratio(
    plan: &SearchPlan,
    sem: SearchSemantics,
    horizon: usize,
) -> Result<RatioReport> {
    let m = plan.ray_count();
    if horizon < m {
        return Err(Error::HorizonTooShort { horizon, min: m });
    }
    let k = sem.visits_required() as usize;
    let reach = horizon + (k + 2) * m;
    let targets = CandidateTargets::new(plan, horizon);
    let candidates: Vec<Candidate> = (0..horizon)
        .map(|j| {
            let d = targets.target(plan, j).distance;
            let cost = targets
                .visits(plan, j, PassDirections::BothDirections, reach)
                .nth(k - 1)
                .map_or(f64::INFINITY, |v| v.cost);
            Candidate {
                index: j,
                ratio: cost / d,
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

/// How travelled distance is measured when counting turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TurnAccounting {
    /// Only distance moved away from the origin.
    OneWay,
    /// Every unit moved.
    RoundTrip,
}

/// Far-end direction reversals completed within `distance_budget`.
pub fn turn_count(plan: &SearchPlan, distance_budget: f64, accounting: TurnAccounting) -> usize {
    if !(distance_budget > 0.0) {
        return 0;
    }
    let mut turns = 0;
    let mut spent = 0.0;
    for i in 0.. {
        if plan.cost_model() == CostModel::Expanding {
            spent += plan.excursion_cost(i);
            if spent > distance_budget {
                break;
            }
            turns += 1;
            continue;
        }
        let legs = plan.legs(i);
        for (idx, leg) in legs.iter().enumerate() {
            let outward = leg.to > leg.from;
            if outward || accounting == TurnAccounting::RoundTrip {
                spent += leg.charge;
            }
            if spent > distance_budget {
                return turns;
            }
            let flips = legs
                .get(idx + 1)
                .is_some_and(|next| (next.to > next.from) != outward && next.charge > 0.0);
            if flips && leg.to > 0.0 {
                turns += 1;
            }
        }
        if matches!(plan.traversal(), Traversal::Simple) && spent > distance_budget {
            break;
        }
    }
    turns
}

/// Closed-form turn bounds: `log_b(d(b-1)+1)+1` in the standard model and
/// `m log_b(d(b-1)/m+1)+m` in the expanding model.
pub fn turn_bound(m: usize, b: f64, d: f64, model: CostModel) -> Result<f64> {
    check_base(b)?;
    if !(d >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "d",
            value: d,
            reason: "distance must be non-negative",
        });
    }
    let m = m as f64;
    Ok(match model {
        CostModel::Standard => (d * (b - 1.0) + 1.0).ln() / b.ln() + 1.0,
        CostModel::Expanding => m * (d * (b - 1.0) / m + 1.0).ln() / b.ln() + m,
    })
}
