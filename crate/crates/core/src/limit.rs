//! Turning a candidate sweep into a [`RatioReport`].

use crate::report::{RatioReport, RatioStatus};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Candidate {
    pub index: usize,
    pub ratio: f64,
    pub witness: f64,
}

/// Relative size below which successive block maxima count as equal.
const SETTLED: f64 = 1e-12;

/// Aitken's delta-squared step on three successive values.
///
/// Self-similar plans produce candidate ratios of the form `L + c q^k`, for
/// which one step recovers `L` exactly.
fn aitken(x0: f64, x1: f64, x2: f64) -> (Option<f64>, RatioStatus) {
    let d1 = x1 - x0;
    let d2 = x2 - x1;
    let scale = x2.abs().max(1.0);
    if d2.abs() <= SETTLED * scale {
        return (Some(x2), RatioStatus::Converged);
    }
    if d1 * d2 > 0.0 && d2.abs() < d1.abs() {
        return (Some(x2 - d2 * d2 / (d2 - d1)), RatioStatus::Converged);
    }
    if d2 > 0.0 && d1 >= 0.0 {
        return (None, RatioStatus::Divergent);
    }
    (None, RatioStatus::Unconverged { gap: d2.abs() })
}

/// Summarise a sweep. `period` is the self-similarity period in candidate
/// indices; `None` disables limit extrapolation.
pub(crate) fn summarize(
    candidates: &[Candidate],
    period: Option<usize>,
    horizon: usize,
) -> RatioReport {
    let Some(worst) =
        candidates
            .iter()
            .copied()
            .reduce(|best, c| if c.ratio > best.ratio { c } else { best })
    else {
        return RatioReport {
            finite_sup: f64::INFINITY,
            limit_sup: None,
            asymptotic: None,
            witness: f64::NAN,
            witness_index: 0,
            horizon,
            status: RatioStatus::Empty,
        };
    };

    let mut report = RatioReport {
        finite_sup: worst.ratio,
        limit_sup: None,
        asymptotic: None,
        witness: worst.witness,
        witness_index: worst.index,
        horizon,
        status: RatioStatus::Converged,
    };
    if worst.ratio.is_infinite() {
        report.status = RatioStatus::Unbounded;
        return report;
    }

    let step = period.unwrap_or(1).max(1);
    let blocks = block_maxima(candidates, step);

    match period {
        Some(_) if blocks.len() >= 3 => {
            let k = blocks.len();
            let (limit, status) = aitken(blocks[k - 3], blocks[k - 2], blocks[k - 1]);
            report.status = status;
            if let Some(limit) = limit {
                report.asymptotic = Some(limit);
                report.limit_sup = Some(limit.max(report.finite_sup));
            }
        }
        _ => {
            let tail = &candidates[candidates.len() - candidates.len().div_ceil(4)..];
            report.asymptotic = tail.iter().map(|c| c.ratio).reduce(f64::max);
            let gap = match blocks.len() {
                0 | 1 => f64::INFINITY,
                k => (blocks[k - 1] - blocks[k - 2]).abs(),
            };
            report.status = RatioStatus::Unconverged { gap };
        }
    }
    report
}

/// Maxima over consecutive index blocks `[s*step, (s+1)*step)`, dropping a
/// trailing block that is only partially populated.
fn block_maxima(candidates: &[Candidate], step: usize) -> Vec<f64> {
    let mut out: Vec<(usize, f64, usize)> = Vec::new();
    for c in candidates {
        let block = c.index / step;
        match out.last_mut() {
            Some((b, max, count)) if *b == block => {
                *max = max.max(c.ratio);
                *count += 1;
            }
            _ => out.push((block, c.ratio, 1)),
        }
    }
    if step > 1 {
        if let Some(&(_, _, count)) = out.last() {
            if count < step && out.len() > 1 {
                out.pop();
            }
        }
        // the leading block may also be partial when the sweep starts late
        if out.len() > 3 && out[0].2 < step {
            out.remove(0);
        }
    }
    out.into_iter().map(|(_, max, _)| max).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(values: impl IntoIterator<Item = f64>) -> Vec<Candidate> {
        values
            .into_iter()
            .enumerate()
            .map(|(index, ratio)| Candidate {
                index,
                ratio,
                witness: index as f64,
            })
            .collect()
    }

    #[test]
    fn geometric_approach_is_extrapolated_exactly() {
        // L - c q^k with L = 5, c = 3, q = 0.7; stop well before it settles
        let c = seq((0..8).map(|k| 5.0 - 3.0 * 0.7f64.powi(k)));
        let r = summarize(&c, Some(1), 8);
        assert_eq!(r.status, RatioStatus::Converged);
        assert!((r.limit_sup.unwrap() - 5.0).abs() < 1e-12);
        assert!(r.finite_sup < 5.0);
    }

    #[test]
    fn early_peak_dominates_limit() {
        let c = seq((1..40).map(|i| 4.0 + 2.0 / (2f64.powi(i) - 1.0)));
        let r = summarize(&c, Some(1), 40);
        assert!((r.finite_sup - 6.0).abs() < 1e-12);
        assert!((r.limit_sup.unwrap() - 6.0).abs() < 1e-12);
        assert!((r.asymptotic.unwrap() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn growth_is_flagged() {
        let c = seq((0..10).map(|k| 2f64.powi(k)));
        let r = summarize(&c, Some(1), 10);
        assert_eq!(r.status, RatioStatus::Divergent);
        assert!(r.limit_sup.is_none());
    }

    #[test]
    fn infinite_candidate_is_unbounded() {
        let c = seq([1.0, f64::INFINITY, 2.0]);
        assert_eq!(summarize(&c, Some(1), 3).status, RatioStatus::Unbounded);
    }

    #[test]
    fn empty_sweep() {
        assert_eq!(summarize(&[], Some(1), 0).status, RatioStatus::Empty);
    }
}
