use serde::Serialize;

use crate::error::{check_probability, check_problems, Error, Result};
use crate::stochastic::beta_r_closed_form;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, tol: f64) -> Result<Self> {
        if !(lo < hi && tol > 0.0 && lo.is_finite() && hi.is_finite()) {
            return Err(Error::MalformedBracket { lo, hi, tol });
        }
        Ok(Bracket { lo, hi, tol })
    }
}

/// Bisection on a sign change. Returns the endpoint of the final bracket
/// with the smaller residual.
pub fn bisect_root(f: impl Fn(f64) -> f64, br: Bracket) -> Result<f64> {
    let Bracket {
        mut lo,
        mut hi,
        tol,
    } = Bracket::new(br.lo, br.hi, br.tol)?;
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
    }
    let mut f_hi = f_hi;
    while hi - lo > tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi })
}

/// `e^x (1-p) + e^x p^2 / (4x) - 1`.
pub fn lemma_function(p: f64, x: f64) -> f64 {
    x.exp() * (1.0 - p) + x.exp() * p * p / (4.0 * x) - 1.0
}

/// Smallest root of [`lemma_function`] in `(0, p/2]`.
pub fn lemma_root(p: f64) -> Result<f64> {
    check_probability(p)?;
    bisect_root(
        |x| lemma_function(p, x),
        Bracket::new(1e-9, p / 2.0, 1e-15)?,
    )
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimum of a unimodal `g`.
pub fn golden_min(g: impl Fn(f64) -> f64, br: Bracket) -> Result<(f64, f64)> {
    let Bracket {
        mut lo,
        mut hi,
        tol,
    } = Bracket::new(br.lo, br.hi, br.tol)?;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    while hi - lo > tol {
        if g1 <= g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - INV_PHI * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + INV_PHI * (hi - lo);
            g2 = g(x2);
        }
        if x1 >= x2 {
            break;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x, g(x)))
}

/// `b^(n+1) / (b - 1)` at `b = (n+1)/n`.
pub fn beta_star(n: usize) -> Result<f64> {
    check_problems(n)?;
    let nf = n as f64;
    let b = (nf + 1.0) / nf;
    Ok(b.powf(nf + 1.0) / (b - 1.0))
}

/// `(b_star, min_b beta_r(n, b))`: a 64-point log grid in `b - 1` over
/// `[1e-6, 49]` locates the basin, golden-section refines it.
pub fn beta_r_star(n: usize) -> Result<(f64, f64)> {
    check_problems(n)?;
    let beta = |b: f64| beta_r_closed_form(n, b).unwrap_or(f64::INFINITY);
    let (lo, hi) = (1e-6f64.ln(), 49f64.ln());
    let grid: Vec<f64> = (0..64)
        .map(|i| 1.0 + (lo + (hi - lo) * i as f64 / 63.0).exp())
        .collect();
    let best = (0..grid.len())
        .min_by(|&a, &b| beta(grid[a]).total_cmp(&beta(grid[b])))
        .expect("grid is non-empty");
    let left = grid[best.saturating_sub(1)];
    let right = grid[(best + 1).min(grid.len() - 1)];
    golden_min(beta, Bracket::new(left, right, 1e-12)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Figure1Row {
    pub n: usize,
    pub beta_star: f64,
    pub beta_r_star: f64,
    pub b_star: f64,
    pub ratio: f64,
}

/// Deterministic and randomized optimal acceleration ratios for
/// `n = 1..=n_max`.
pub fn figure1_curve(n_max: usize) -> Result<Vec<Figure1Row>> {
    check_problems(n_max)?;
    (1..=n_max)
        .map(|n| {
            let det = beta_star(n)?;
            let (b_star, rand) = beta_r_star(n)?;
            Ok(Figure1Row {
                n,
                beta_star: det,
                beta_r_star: rand,
                b_star,
                ratio: rand / det,
            })
        })
        .collect()
}
