//! Exponential schedules of Monte Carlo contract algorithms: each completed
//! contract is correct independently with probability `p`.

use crate::error::{check_base, check_probability, check_problems, Error, Result};
use crate::limit::{summarize, Candidate};
use crate::report::RatioReport;
use crate::strategies::make_exponential_schedule;

/// Expected usable length when the `j`-th longest completed contract is the
/// first correct one with probability `p (1-p)^(j-1)`.
fn expected_length(p: f64, completed: &mut [f64]) -> f64 {
    completed.sort_by(|a, b| b.total_cmp(a));
    let mut miss = 1.0;
    let mut total = 0.0;
    for &len in completed.iter() {
        total += p * miss * len;
        miss *= 1.0 - p;
    }
    total
}

/// Acceleration ratio `t / min_i E[l(i, t)]` of the exponential schedule
/// with base `b`, over interruptions just before each finish time.
pub fn expected_acc_ratio_mc_contracts(
    n: usize,
    p: f64,
    b: f64,
    horizon: usize,
) -> Result<RatioReport> {
    check_problems(n)?;
    check_probability(p)?;
    check_base(b)?;
    if horizon < n {
        return Err(Error::HorizonTooShort { horizon, min: n });
    }
    let plan = make_exponential_schedule(n, b)?;
    let mut completed: Vec<Vec<f64>> = vec![Vec::new(); n];
    let mut candidates = Vec::new();
    for (k, job) in plan.jobs().take(horizon).enumerate() {
        if k + 1 >= n {
            let worst = completed
                .iter_mut()
                .map(|lengths| expected_length(p, lengths))
                .fold(f64::INFINITY, f64::min);
            if worst > 0.0 {
                candidates.push(Candidate {
                    index: k,
                    ratio: job.finish / worst,
                    witness: job.finish,
                });
            }
        }
        completed[job.problem].push(job.length);
    }
    Ok(summarize(&candidates, Some(1), horizon))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_contracts_are_deterministic() {
        let r = expected_acc_ratio_mc_contracts(1, 1.0, 2.0, 200).unwrap();
        assert!((r.sup() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn expected_length_weights() {
        let mut lengths = vec![1.0, 4.0, 2.0];
        // 0.5*4 + 0.25*2 + 0.125*1
        assert_eq!(expected_length(0.5, &mut lengths), 2.625);
    }

    #[test]
    fn asymptotic_closed_form() {
        // deterministic ratio scaled by (1 - (1-p) b^-n) / p
        let (n, p, b) = (2usize, 0.3, 1.5f64);
        let r = expected_acc_ratio_mc_contracts(n, p, b, 300).unwrap();
        let det = b.powi(n as i32 + 1) / (b - 1.0);
        let oracle = det * (1.0 - (1.0 - p) * b.powi(-(n as i32))) / p;
        assert!((r.asymptotic.unwrap() - oracle).abs() < 1e-6 * oracle);
    }
}
