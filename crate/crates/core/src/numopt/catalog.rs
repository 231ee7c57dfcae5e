//! Every published bound, evaluated exactly as printed.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters a catalog entry may need. Entries fall back to their
/// published base choice when `b` is absent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ClaimParams {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub r: Option<u32>,
    pub p: Option<f64>,
    pub b: Option<f64>,
    pub t: Option<f64>,
    pub d: Option<f64>,
}

impl ClaimParams {
    pub fn m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }
    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }
    pub fn r(mut self, r: u32) -> Self {
        self.r = Some(r);
        self
    }
    pub fn p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }
    pub fn b(mut self, b: f64) -> Self {
        self.b = Some(b);
        self
    }
    pub fn t(mut self, t: f64) -> Self {
        self.t = Some(t);
        self
    }
    pub fn d(mut self, d: f64) -> Self {
        self.d = Some(d);
        self
    }
}

/// Identifiers accepted by [`closed_form`].
pub const CLAIM_IDS: &[&str] = &[
    "eq2",
    "eq4",
    "prob-lower-search",
    "prob-lower-contracts",
    "prob-upper-search",
    "mc-contracts-upper",
    "mc-contracts-asymptotic",
    "redundancy-lower",
    "best-exponential-search",
    "nm-search",
    "pseudo-exponential",
    "rth-largest-exponential",
    "beta-r",
    "beta-r-asymptote",
    "figure1-ratio",
    "rr-worst",
    "rr-asymptotic",
    "preemption-bound",
    "exponential-schedule",
    "contract-bound",
    "geometric-search-worst",
    "geometric-search-asymptotic",
    "turn-bound-standard",
    "turn-bound-expanding",
];

fn need<T>(value: Option<T>, claim: &'static str, name: &'static str) -> Result<T> {
    value.ok_or(Error::MissingParameter { claim, name })
}

fn log_base(b: f64, x: f64) -> f64 {
    x.ln() / b.ln()
}

/// Value of a published expression.
pub fn closed_form(claim_id: &str, params: &ClaimParams) -> Result<f64> {
    let id = CLAIM_IDS
        .iter()
        .copied()
        .find(|&c| c == claim_id)
        .ok_or_else(|| Error::UnknownClaim(claim_id.to_string()))?;
    let m = || need(params.m, id, "m").map(|m| m as f64);
    let n = || need(params.n, id, "n").map(|n| n as f64);
    let r = || need(params.r, id, "r").map(f64::from);
    let p = || need(params.p, id, "p");
    let b = || need(params.b, id, "b");
    let t = || need(params.t, id, "t");
    let d = || need(params.d, id, "d");
    let search_base = |m: f64| params.b.unwrap_or(m / (m - 1.0));
    let schedule_base = |n: f64| params.b.unwrap_or((n + 1.0) / n);

    Ok(match id {
        "eq2" => {
            let m = m()?;
            let b = search_base(m);
            1.0 + 2.0 * (b.powf(m) - 1.0) / (b - 1.0)
        }
        "eq4" | "exponential-schedule" => {
            let n = n()?;
            let b = schedule_base(n);
            b.powf(n + 1.0) / (b - 1.0)
        }
        "prob-lower-search" => m()? / (2.0 * p()?),
        "prob-lower-contracts" => n()? / p()?,
        "prob-upper-search" => 1.0 + 8.0 * m()? / p()?.powi(2),
        "mc-contracts-upper" => E * n()? / p()? + E / p()?,
        "mc-contracts-asymptotic" => (E - 1.0 + p()?) * n()? / p()?,
        "redundancy-lower" => r()? * m()? / 2.0,
        "best-exponential-search" => 2.0 * E * ((r()? / 2.0).ceil() * m()? - 1.0) + 1.0,
        "nm-search" => {
            let (m, r) = (m()?, r()?);
            r * (m - 1.0) * (m / (m - 1.0)).powf(m) + 2.0 - r
        }
        "pseudo-exponential" => {
            let (n, r) = (n()?, r()?);
            r * n * ((n + 1.0) / n).powf(n + 1.0)
        }
        "rth-largest-exponential" => {
            let rn = r()? * n()?;
            (rn + 1.0) * (1.0 + 1.0 / rn).powf(rn)
        }
        "beta-r" => {
            let (n, b) = (n()?, b()?);
            n * b.powf(n + 1.0) * b.ln() / ((b.powf(n) - 1.0) * (b - 1.0))
        }
        "beta-r-asymptote" => (n()? + 1.0) * E / (E - 1.0),
        "figure1-ratio" => 0.6,
        "rr-worst" => n()? * (b()? + 1.0),
        "rr-asymptotic" => n()? * b()?,
        "preemption-bound" => {
            let (n, b, t) = (n()?, b()?, t()?);
            n * log_base(b, t * (b - 1.0) / n + 1.0) + n
        }
        "contract-bound" => {
            let (b, t) = (b()?, t()?);
            log_base(b, t * (b - 1.0) + 1.0) + 1.0
        }
        "geometric-search-worst" => (b()? + 1.0) * m()?,
        "geometric-search-asymptotic" => b()? * m()?,
        "turn-bound-standard" => {
            let (b, d) = (b()?, d()?);
            log_base(b, d * (b - 1.0) + 1.0) + 1.0
        }
        "turn-bound-expanding" => {
            let (m, b, d) = (m()?, b()?, d()?);
            m * log_base(b, d * (b - 1.0) / m + 1.0) + m
        }
        _ => unreachable!("every id in CLAIM_IDS has an expression"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(id: &str, params: ClaimParams) -> f64 {
        closed_form(id, &params).unwrap()
    }

    #[test]
    fn printed_values() {
        assert!((eval("eq2", ClaimParams::default().m(2)) - 7.0).abs() < 1e-12);
        assert!((eval("eq4", ClaimParams::default().n(1)) - 4.0).abs() < 1e-12);
        assert!((eval("pseudo-exponential", ClaimParams::default().n(1).r(2)) - 8.0).abs() < 1e-12);
        assert!(
            (eval("rth-largest-exponential", ClaimParams::default().n(1).r(2)) - 6.75).abs()
                < 1e-12
        );
        assert!(
            (eval("best-exponential-search", ClaimParams::default().m(10).r(4)) - (38.0 * E + 1.0))
                .abs()
                < 1e-12
        );
        assert!(
            (eval("beta-r", ClaimParams::default().n(1).b(2.0)) - 4.0 * 2f64.ln()).abs() < 1e-12
        );
        assert!(
            (eval(
                "preemption-bound",
                ClaimParams::default().n(2).b(2.0).t(14.0)
            ) - 8.0)
                .abs()
                < 1e-12
        );
        assert!(
            (eval(
                "turn-bound-expanding",
                ClaimParams::default().m(2).b(2.0).d(6.0)
            ) - 6.0)
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn every_id_evaluates_with_full_params() {
        let full = ClaimParams::default()
            .m(3)
            .n(2)
            .r(2)
            .p(0.5)
            .b(1.5)
            .t(10.0)
            .d(10.0);
        for id in CLAIM_IDS {
            assert!(eval(id, full).is_finite(), "{id}");
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            closed_form("nope", &ClaimParams::default()),
            Err(Error::UnknownClaim("nope".into()))
        );
        assert!(matches!(
            closed_form("rr-worst", &ClaimParams::default().n(2)),
            Err(Error::MissingParameter { name: "b", .. })
        ));
    }
}
