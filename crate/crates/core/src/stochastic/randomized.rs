//! The randomized schedule: a uniform problem permutation and a uniform
//! offset `eps` in `[0, 1)`, with job `i` of length `b^(i + eps)`.
//!
//! Interruptions are written `t = (b^k - 1)/(b - 1) * b^delta` with
//! `1 <= b^delta < (b^(k+1) - 1)/(b^k - 1)`. The job running at `t` then has
//! index `k` or `k - 1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_base, check_problems, Error, Result};
use crate::report::{McEstimate, RatioReport, RatioStatus};
use crate::schedule_plan::Job;
use crate::strategies::{make_randomized_schedule_with, RandomizedDraw};

/// The problem whose answer is requested at the interruption.
pub const REQUESTED_PROBLEM: usize = 0;

/// `n b^(n+1) ln b / ((b^n - 1)(b - 1))`.
pub fn beta_r_closed_form(n: usize, b: f64) -> Result<f64> {
    check_problems(n)?;
    check_base(b)?;
    let nf = n as f64;
    Ok(nf * b.powf(nf + 1.0) * b.ln() / ((b.powf(nf) - 1.0) * (b - 1.0)))
}

/// An interruption `t = (b^k - 1)/(b - 1) * b^delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interruption {
    pub k: u32,
    pub delta: f64,
}

impl Interruption {
    pub fn time(&self, b: f64) -> f64 {
        (b.powi(self.k as i32) - 1.0) / (b - 1.0) * b.powf(self.delta)
    }

    fn validate(&self, b: f64) -> Result<()> {
        let k = self.k as i32;
        let upper = (b.powi(k + 1) - 1.0) / (b.powi(k) - 1.0);
        if self.k == 0 || !(self.delta >= 0.0 && b.powf(self.delta) < upper) {
            return Err(Error::InvalidParameter {
                name: "delta",
                value: self.delta,
                reason: "need k >= 1 and 1 <= b^delta < (b^(k+1)-1)/(b^k-1)",
            });
        }
        Ok(())
    }
}

/// Exact `E[D]` for the requested problem, valid once `k >= n + 1`.
pub fn expected_returned_length(n: usize, b: f64, at: Interruption) -> Result<f64> {
    check_problems(n)?;
    check_base(b)?;
    at.validate(b)?;
    let (nf, k) = (n as f64, at.k as f64);
    let spread = (b.powf(nf) - 1.0) / (nf * b.ln());
    Ok(if at.delta < 1.0 {
        b.powf(k - 1.0 - nf) * b.powf(at.delta) * spread
    } else {
        b.powf(k - nf) * spread
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomizedScheduleParams {
    pub n: usize,
    pub b: f64,
    /// Midpoint-rule resolution in `eps` for the quadrature evaluator.
    pub epsilon_grid_size: usize,
    pub t_grid: Vec<Interruption>,
}

impl RandomizedScheduleParams {
    /// Three late phases (where `b^-k <= 1e-3`) crossed with offsets
    /// `0, 0.25, 0.5, 0.75, 0.95, 1`.
    pub fn standard(n: usize, b: f64) -> Result<Self> {
        check_problems(n)?;
        check_base(b)?;
        let k0 = ((1000f64.ln() / b.ln()).ceil() as u32).max(n as u32 + 1);
        let t_grid = [k0, k0 + 1, k0 + 4]
            .iter()
            .flat_map(|&k| [0.0, 0.25, 0.5, 0.75, 0.95, 1.0].map(|delta| Interruption { k, delta }))
            .collect();
        Ok(RandomizedScheduleParams {
            n,
            b,
            epsilon_grid_size: 4096,
            t_grid,
        })
    }

    fn validate(&self) -> Result<()> {
        check_problems(self.n)?;
        check_base(self.b)?;
        if self.t_grid.is_empty() || self.epsilon_grid_size == 0 {
            return Err(Error::InvalidParameter {
                name: "t_grid",
                value: self.t_grid.len() as f64,
                reason: "grids must be non-empty",
            });
        }
        self.t_grid.iter().try_for_each(|at| at.validate(self.b))
    }
}

/// Per-interruption result of an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub at: Interruption,
    pub t: f64,
    pub expected_d: f64,
    /// Zero for the quadrature evaluator.
    pub stderr: f64,
    pub ratio: f64,
    pub closed_form_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomizedScheduleReport {
    pub report: RatioReport,
    pub points: Vec<GridPoint>,
    /// Sampled running indices outside `{k - 1, k}`.
    pub running_index_violations: usize,
}

/// Jobs of one draw up to the first one finishing after `t_max`.
fn draw_jobs(n: usize, b: f64, draw: RandomizedDraw, t_max: f64) -> Result<Vec<Job>> {
    let plan = make_randomized_schedule_with(n, b, draw)?;
    let mut jobs = Vec::new();
    for job in plan.jobs() {
        let done = job.finish > t_max;
        jobs.push(job);
        if done {
            break;
        }
    }
    Ok(jobs)
}

/// `(D, l)`: the longest completed length for the requested problem and the
/// index of the job running at `t`.
fn returned_at(jobs: &[Job], t: f64) -> (f64, usize) {
    let running = jobs.partition_point(|j| j.finish <= t);
    let d = jobs[..running]
        .iter()
        .rev()
        .find(|j| j.problem == REQUESTED_PROBLEM)
        .map_or(0.0, |j| j.length);
    (d, running)
}

/// `(D, l)` at time `t` for a single draw.
pub fn sample_returned_length(
    n: usize,
    b: f64,
    draw: RandomizedDraw,
    t: f64,
) -> Result<(f64, usize)> {
    let jobs = draw_jobs(n, b, draw, t)?;
    Ok(returned_at(&jobs, t))
}

fn assemble(
    params: &RandomizedScheduleParams,
    expected: Vec<(f64, f64)>,
    violations: usize,
) -> Result<RandomizedScheduleReport> {
    let beta = beta_r_closed_form(params.n, params.b)?;
    let points: Vec<GridPoint> = params
        .t_grid
        .iter()
        .zip(expected)
        .map(|(&at, (expected_d, stderr))| {
            let t = at.time(params.b);
            let closed =
                expected_returned_length(params.n, params.b, at).map_or(f64::NAN, |d| t / d);
            GridPoint {
                at,
                t,
                expected_d,
                stderr,
                ratio: t / expected_d,
                closed_form_ratio: closed.min(beta),
            }
        })
        .collect();
    let (witness_index, worst) = points
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.ratio.total_cmp(&b.1.ratio))
        .expect("grid is non-empty");
    let last_k = points.iter().map(|p| p.at.k).max().unwrap_or(0);
    let asymptotic = points
        .iter()
        .filter(|p| p.at.k == last_k)
        .map(|p| p.ratio)
        .reduce(f64::max);
    let report = RatioReport {
        finite_sup: worst.ratio,
        limit_sup: None,
        asymptotic,
        witness: worst.t,
        witness_index,
        horizon: points.len(),
        status: if worst.ratio.is_finite() {
            RatioStatus::Converged
        } else {
            RatioStatus::Unbounded
        },
    };
    Ok(RandomizedScheduleReport {
        report,
        points,
        running_index_violations: violations,
    })
}

/// Monte Carlo estimate of `sup_t t / E[D]` over the grid. Trial `i` uses
/// stream `i` of the generator keyed by `seed`.
pub fn mc_randomized_schedule_ratio(
    params: &RandomizedScheduleParams,
    trials: usize,
    seed: u64,
) -> Result<RandomizedScheduleReport> {
    params.validate()?;
    if trials == 0 {
        return Err(Error::InvalidParameter {
            name: "trials",
            value: 0.0,
            reason: "at least one trial is required",
        });
    }
    let (n, b) = (params.n, params.b);
    let times: Vec<f64> = params.t_grid.iter().map(|at| at.time(b)).collect();
    let t_max = times.iter().copied().fold(0.0, f64::max);
    let samples: Vec<(Vec<f64>, usize)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let draw = RandomizedDraw::from_seed(n, seed, trial as u64);
            let jobs = draw_jobs(n, b, draw, t_max).expect("parameters validated");
            let mut violations = 0;
            let ds = params
                .t_grid
                .iter()
                .zip(&times)
                .map(|(at, &t)| {
                    let (d, running) = returned_at(&jobs, t);
                    let k = at.k as usize;
                    if running != k && running + 1 != k {
                        violations += 1;
                    }
                    d
                })
                .collect();
            (ds, violations)
        })
        .collect();
    let violations = samples.iter().map(|s| s.1).sum();
    let expected = (0..params.t_grid.len())
        .map(|g| {
            let column: Vec<f64> = samples.iter().map(|s| s.0[g]).collect();
            let est = McEstimate::from_samples(&column, seed);
            (est.mean, est.stderr)
        })
        .collect();
    assemble(params, expected, violations)
}

/// Deterministic counterpart of [`mc_randomized_schedule_ratio`]: exact
/// average over the requested problem's position and a midpoint rule in
/// `eps`.
pub fn quadrature_randomized_schedule_ratio(
    params: &RandomizedScheduleParams,
) -> Result<RandomizedScheduleReport> {
    params.validate()?;
    let (n, b) = (params.n, params.b);
    let times: Vec<f64> = params.t_grid.iter().map(|at| at.time(b)).collect();
    let t_max = times.iter().copied().fold(0.0, f64::max);
    let steps = params.epsilon_grid_size;
    let mut sums = vec![0.0; times.len()];
    let mut violations = 0;
    for slot in 0..n {
        let mut permutation: Vec<usize> = (1..n).collect();
        permutation.insert(slot, REQUESTED_PROBLEM);
        for s in 0..steps {
            let epsilon = (s as f64 + 0.5) / steps as f64;
            let draw = RandomizedDraw {
                permutation: permutation.clone(),
                epsilon,
            };
            let jobs = draw_jobs(n, b, draw, t_max)?;
            for ((sum, &t), at) in sums.iter_mut().zip(&times).zip(&params.t_grid) {
                let (d, running) = returned_at(&jobs, t);
                let k = at.k as usize;
                if running != k && running + 1 != k {
                    violations += 1;
                }
                *sum += d;
            }
        }
    }
    let cells = (n * steps) as f64;
    let expected = sums.into_iter().map(|s| (s / cells, 0.0)).collect();
    assemble(params, expected, violations)
}
