//! Probabilistic detection, Monte Carlo contracts and the randomized
//! schedule.

mod contracts;
mod detection;
mod randomized;

pub use contracts::expected_acc_ratio_mc_contracts;
pub use detection::{
    detection_base, expected_search_cost, mc_search_cost, probabilistic_competitive_ratio,
    DetectionModel, SeriesCost, DEFAULT_TAIL_TOL,
};
pub use randomized::{
    beta_r_closed_form, expected_returned_length, mc_randomized_schedule_ratio,
    quadrature_randomized_schedule_ratio, sample_returned_length, GridPoint, Interruption,
    RandomizedScheduleParams, RandomizedScheduleReport, REQUESTED_PROBLEM,
};
