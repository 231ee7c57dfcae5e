//! Simulators and evaluators for multi-ray search and contract scheduling
//! under worst-case, redundant, probabilistic and randomized semantics.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
mod limit;
pub mod numopt;
pub mod report;
pub mod sched_eval;
pub mod schedule_plan;
pub mod search_eval;
pub mod search_plan;
pub mod stochastic;
pub mod strategies;

pub use error::{Error, Result};
pub use report::{ClaimCheck, McEstimate, RatioReport, RatioStatus, Relation, Verdict};
pub use sched_eval::{
    acceleration_ratio, contract_bound, contract_count, ell, preemption_bound, preemption_count,
    ScheduleSemantics,
};
pub use schedule_plan::{schedule_prefix, Job, SchedulePlan, ScheduleTag};
pub use search_eval::{
    competitive_ratio, cost_to_visit, turn_bound, turn_count, PassDirections, SearchSemantics,
    Target, TargetSide, TurnAccounting, Visit, VisitOutcome, Visits,
};
pub use search_plan::{
    excursion_prefix, CostModel, Excursion, ExcursionStep, SearchPlan, SearchTag, Traversal,
};
pub use strategies::*;
