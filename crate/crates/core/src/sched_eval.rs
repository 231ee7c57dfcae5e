//! Adversarial evaluation of schedules: acceleration ratios and the
//! contract/preemption counts of the standard and preemptive models.

use serde::Serialize;

use crate::error::{check_base, check_problems, check_redundancy, Error, Result};
use crate::limit::{summarize, Candidate};
use crate::report::RatioReport;
use crate::schedule_plan::{Job, SchedulePlan};

/// What counts as the usable answer for a problem at an interruption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScheduleSemantics {
    /// Longest completed contract.
    LongestCompleted,
    /// Longest contract length completed at least `r` times.
    RTimesCompleted(u32),
    /// `r`-th largest completed contract, counted with multiplicity.
    RthLargestCompleted(u32),
    /// Total time spent on the problem, including a cut running job.
    AggregateInterruptible,
}

impl ScheduleSemantics {
    fn validate(&self) -> Result<()> {
        match *self {
            ScheduleSemantics::RTimesCompleted(r) | ScheduleSemantics::RthLargestCompleted(r) => {
                check_redundancy(r)
            }
            _ => Ok(()),
        }
    }
}

/// Lengths this close (relatively) are the same contract repeated.
const SAME_LENGTH: f64 = 1e-9;

/// Usable length from the completed contract lengths of one problem.
fn usable(sem: ScheduleSemantics, completed: &[f64], partial: f64) -> f64 {
    match sem {
        ScheduleSemantics::LongestCompleted => completed.iter().copied().fold(0.0, f64::max),
        ScheduleSemantics::AggregateInterruptible => completed.iter().sum::<f64>() + partial,
        ScheduleSemantics::RthLargestCompleted(r) => {
            let mut sorted = completed.to_vec();
            sorted.sort_by(|a, b| b.total_cmp(a));
            sorted.get(r as usize - 1).copied().unwrap_or(0.0)
        }
        ScheduleSemantics::RTimesCompleted(r) => {
            let mut sorted = completed.to_vec();
            sorted.sort_by(|a, b| b.total_cmp(a));
            let mut start = 0;
            while start < sorted.len() {
                let head = sorted[start];
                let end =
                    start + sorted[start..].partition_point(|&x| x >= head * (1.0 - SAME_LENGTH));
                if end - start >= r as usize {
                    return head;
                }
                start = end;
            }
            0.0
        }
    }
}

/// `l(i, t)`: usable length for problem `i` at time `t`. Jobs finishing at
/// or before `t` are complete.
pub fn ell(plan: &SchedulePlan, sem: ScheduleSemantics, problem: usize, t: f64) -> Result<f64> {
    sem.validate()?;
    if !(t > 0.0) {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "interruption time must be positive",
        });
    }
    if problem >= plan.problem_count() {
        return Err(Error::InvalidParameter {
            name: "problem",
            value: problem as f64,
            reason: "problem index out of range",
        });
    }
    let mut completed = Vec::new();
    let mut partial = 0.0;
    for job in plan.jobs().take_while(|j| j.start < t) {
        if job.problem != problem {
            continue;
        }
        if job.finish <= t {
            completed.push(job.length);
        } else if plan.interruptible() {
            partial = job.elapsed_at(t);
        }
    }
    Ok(usable(sem, &completed, partial))
}

/// Acceleration ratio over interruptions just before `finish(k)` for
/// `n - 1 <= k < horizon`. At such an instant jobs `0..k` are complete and
/// job `k` is not.
pub fn acceleration_ratio(
    plan: &SchedulePlan,
    sem: ScheduleSemantics,
    horizon: usize,
) -> Result<RatioReport> {
    sem.validate()?;
    let n = plan.problem_count();
    if horizon < n {
        return Err(Error::HorizonTooShort { horizon, min: n });
    }
    let jobs: Vec<Job> = plan.jobs().take(horizon).collect();
    let mut completed: Vec<Vec<f64>> = vec![Vec::new(); n];
    let mut candidates = Vec::new();
    for (k, job) in jobs.iter().enumerate() {
        if k + 1 >= n {
            let t = job.finish;
            let worst = completed
                .iter()
                .map(|lengths| usable(sem, lengths, 0.0))
                .fold(f64::INFINITY, f64::min);
            if worst > 0.0 {
                candidates.push(Candidate {
                    index: k,
                    ratio: t / worst,
                    witness: t,
                });
            }
        }
        completed[job.problem].push(job.length);
    }
    Ok(summarize(
        &candidates,
        plan.tag().self_similar_period(n),
        horizon,
    ))
}

/// Contracts started strictly before `t`.
pub fn contract_count(plan: &SchedulePlan, t: f64) -> usize {
    plan.jobs().take_while(|j| j.start < t).count()
}

/// `log_b(t(b-1)+1)+1`.
pub fn contract_bound(b: f64, t: f64) -> Result<f64> {
    check_base(b)?;
    check_time(t)?;
    Ok((t * (b - 1.0) + 1.0).ln() / b.ln() + 1.0)
}

/// Job switches (including the first start) strictly before `t`.
pub fn preemption_count(plan: &SchedulePlan, t: f64) -> Result<usize> {
    if !plan.interruptible() {
        return Err(Error::NotInterruptible);
    }
    Ok(contract_count(plan, t))
}

/// `n log_b(t(b-1)/n+1)+n`.
pub fn preemption_bound(n: usize, b: f64, t: f64) -> Result<f64> {
    check_problems(n)?;
    check_base(b)?;
    check_time(t)?;
    let n = n as f64;
    Ok(n * (t * (b - 1.0) / n + 1.0).ln() / b.ln() + n)
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "time must be non-negative",
        })
    }
}
