//! n-problem schedules of contract (or interruptible) algorithm runs on a
//! single processor.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{check_base, check_problems, check_redundancy, Error, Result};

/// Strategy descriptor carried by a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ScheduleTag {
    Exponential { base: f64 },
    PseudoExponential { base: f64, redundancy: u32 },
    GeometricRoundRobin { base: f64 },
    Randomized { base: f64, epsilon: f64 },
    Custom,
}

impl ScheduleTag {
    pub fn name(&self) -> &'static str {
        match self {
            ScheduleTag::Exponential { .. } => "exponential",
            ScheduleTag::PseudoExponential { .. } => "pseudo",
            ScheduleTag::GeometricRoundRobin { .. } => "geometric-rr",
            ScheduleTag::Randomized { .. } => "randomized",
            ScheduleTag::Custom => "custom",
        }
    }

    pub fn base(&self) -> Option<f64> {
        match *self {
            ScheduleTag::Exponential { base }
            | ScheduleTag::PseudoExponential { base, .. }
            | ScheduleTag::GeometricRoundRobin { base }
            | ScheduleTag::Randomized { base, .. } => Some(base),
            ScheduleTag::Custom => None,
        }
    }

    /// Jobs after which the schedule repeats up to scaling and problem
    /// relabelling.
    pub fn self_similar_period(&self, problem_count: usize) -> Option<usize> {
        match *self {
            ScheduleTag::Exponential { .. } => Some(1),
            ScheduleTag::PseudoExponential { redundancy, .. } => Some(redundancy as usize),
            ScheduleTag::GeometricRoundRobin { .. } => Some(problem_count),
            // a fixed permutation breaks relabelling symmetry only in names
            ScheduleTag::Randomized { .. } => Some(1),
            ScheduleTag::Custom => None,
        }
    }
}

#[derive(Clone)]
enum JobRule {
    /// Job `i`: problem `i mod n`, length `scale * b^i`.
    Exponential {
        scale: f64,
        base: f64,
    },
    /// Phase `i` emits `r` jobs for problem `i mod n` of length `b^i`.
    Pseudo {
        base: f64,
        redundancy: u32,
    },
    /// Phase `i` emits one job of length `b^i` per problem, in order.
    RoundRobin {
        base: f64,
    },
    /// Job `i`: problem `perm[i mod n]`, length `b^(i + epsilon)`.
    Randomized {
        base: f64,
        permutation: Arc<[usize]>,
        epsilon: f64,
    },
    Custom(Arc<dyn Fn(usize) -> (usize, f64) + Send + Sync>),
}

/// One scheduled run. Jobs are back-to-back: `start(0) = 0` and
/// `start(i + 1) = finish(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Job {
    pub index: usize,
    pub problem: usize,
    pub length: f64,
    pub start: f64,
    pub finish: f64,
}

impl Job {
    /// Time the job has been running at instant `t`.
    pub fn elapsed_at(&self, t: f64) -> f64 {
        (t - self.start).clamp(0.0, self.length)
    }
}

#[derive(Clone)]
pub struct SchedulePlan {
    problem_count: usize,
    rule: JobRule,
    interruptible: bool,
    tag: ScheduleTag,
}

impl fmt::Debug for SchedulePlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SchedulePlan")
            .field("problem_count", &self.problem_count)
            .field("interruptible", &self.interruptible)
            .field("tag", &self.tag)
            .finish()
    }
}

impl SchedulePlan {
    pub(crate) fn exponential(n: usize, base: f64) -> Result<Self> {
        check_problems(n)?;
        check_base(base)?;
        Ok(SchedulePlan {
            problem_count: n,
            rule: JobRule::Exponential { scale: 1.0, base },
            interruptible: false,
            tag: ScheduleTag::Exponential { base },
        })
    }

    pub(crate) fn pseudo(n: usize, base: f64, redundancy: u32) -> Result<Self> {
        check_problems(n)?;
        check_base(base)?;
        check_redundancy(redundancy)?;
        Ok(SchedulePlan {
            problem_count: n,
            rule: JobRule::Pseudo { base, redundancy },
            interruptible: false,
            tag: ScheduleTag::PseudoExponential { base, redundancy },
        })
    }

    pub(crate) fn round_robin(n: usize, base: f64) -> Result<Self> {
        check_problems(n)?;
        check_base(base)?;
        Ok(SchedulePlan {
            problem_count: n,
            rule: JobRule::RoundRobin { base },
            interruptible: true,
            tag: ScheduleTag::GeometricRoundRobin { base },
        })
    }

    pub(crate) fn randomized(
        n: usize,
        base: f64,
        permutation: Vec<usize>,
        epsilon: f64,
    ) -> Result<Self> {
        check_problems(n)?;
        check_base(base)?;
        let mut seen = vec![false; n];
        let valid = permutation.len() == n
            && permutation
                .iter()
                .all(|&p| p < n && !std::mem::replace(&mut seen[p], true));
        if !valid {
            return Err(Error::InvalidParameter {
                name: "permutation",
                value: permutation.len() as f64,
                reason: "must be a permutation of 0..n",
            });
        }
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: epsilon,
                reason: "offset must lie in [0, 1)",
            });
        }
        Ok(SchedulePlan {
            problem_count: n,
            rule: JobRule::Randomized {
                base,
                permutation: permutation.into(),
                epsilon,
            },
            interruptible: false,
            tag: ScheduleTag::Randomized { base, epsilon },
        })
    }

    /// Escape hatch: `job(i) -> (problem, length)`.
    pub fn custom<F>(n: usize, interruptible: bool, job: F) -> Result<Self>
    where
        F: Fn(usize) -> (usize, f64) + Send + Sync + 'static,
    {
        check_problems(n)?;
        Ok(SchedulePlan {
            problem_count: n,
            rule: JobRule::Custom(Arc::new(job)),
            interruptible,
            tag: ScheduleTag::Custom,
        })
    }

    pub fn problem_count(&self) -> usize {
        self.problem_count
    }

    pub fn interruptible(&self) -> bool {
        self.interruptible
    }

    pub fn tag(&self) -> ScheduleTag {
        self.tag
    }

    /// Same schedule with every job length multiplied by `c > 0`; only
    /// exponential and custom schedules support this.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter {
                name: "c",
                value: c,
                reason: "scale must be positive",
            });
        }
        let rule = match &self.rule {
            JobRule::Exponential { scale, base } => JobRule::Exponential {
                scale: scale * c,
                base: *base,
            },
            JobRule::Custom(f) => {
                let f = Arc::clone(f);
                JobRule::Custom(Arc::new(move |i| {
                    let (p, len) = f(i);
                    (p, len * c)
                }))
            }
            _ => {
                return Err(Error::Unsupported(
                    "only exponential and custom schedules can be rescaled",
                ))
            }
        };
        Ok(SchedulePlan {
            rule,
            ..self.clone()
        })
    }

    /// `(problem, length)` of job `i`.
    pub fn job_spec(&self, i: usize) -> (usize, f64) {
        let n = self.problem_count;
        match &self.rule {
            JobRule::Exponential { scale, base } => (i % n, scale * base.powi(i as i32)),
            JobRule::Pseudo { base, redundancy } => {
                let phase = i / *redundancy as usize;
                (phase % n, base.powi(phase as i32))
            }
            JobRule::RoundRobin { base } => (i % n, base.powi((i / n) as i32)),
            JobRule::Randomized {
                base,
                permutation,
                epsilon,
            } => (permutation[i % n], base.powf(i as f64 + epsilon)),
            JobRule::Custom(f) => f(i),
        }
    }

    /// Lazily generated jobs with start/finish times.
    pub fn jobs(&self) -> Jobs<'_> {
        Jobs {
            plan: self,
            next: 0,
            clock: 0.0,
        }
    }
}

/// Iterator over the (infinite) job sequence of a schedule.
pub struct Jobs<'a> {
    plan: &'a SchedulePlan,
    next: usize,
    clock: f64,
}

impl Iterator for Jobs<'_> {
    type Item = Job;

    fn next(&mut self) -> Option<Job> {
        let (problem, length) = self.plan.job_spec(self.next);
        debug_assert!(length > 0.0, "job lengths must be positive");
        debug_assert!(problem < self.plan.problem_count);
        let job = Job {
            index: self.next,
            problem,
            length,
            start: self.clock,
            finish: self.clock + length,
        };
        self.next += 1;
        self.clock = job.finish;
        Some(job)
    }
}

/// Every job that starts strictly before `horizon_time`. The last job may
/// run past the horizon; it is returned whole so that longer horizons
/// extend shorter ones.
pub fn schedule_prefix(plan: &SchedulePlan, horizon_time: f64) -> Vec<Job> {
    plan.jobs()
        .take_while(|job| job.start < horizon_time)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn randomized_rejects_bad_permutation() {
        assert!(SchedulePlan::randomized(3, 2.0, vec![0, 0, 1], 0.0).is_err());
        assert!(SchedulePlan::randomized(3, 2.0, vec![0, 1], 0.0).is_err());
        assert!(SchedulePlan::randomized(2, 2.0, vec![1, 0], 1.0).is_err());
        assert!(SchedulePlan::randomized(2, 2.0, vec![1, 0], 0.5).is_ok());
    }

    #[test]
    fn zero_horizon_is_empty() {
        let plan = SchedulePlan::exponential(2, 2.0).unwrap();
        assert!(schedule_prefix(&plan, 0.0).is_empty());
    }

    #[test]
    fn elapsed_is_clamped() {
        let job = Job {
            index: 0,
            problem: 0,
            length: 2.0,
            start: 1.0,
            finish: 3.0,
        };
        assert_eq!(job.elapsed_at(0.5), 0.0);
        assert_eq!(job.elapsed_at(2.5), 1.5);
        assert_eq!(job.elapsed_at(9.0), 2.0);
    }
}
