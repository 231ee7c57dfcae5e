use thiserror::Error;

/// Errors raised by plan constructors, evaluators and numeric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error(
        "bracket [{lo}, {hi}] does not enclose a sign change (f(lo) = {f_lo}, f(hi) = {f_hi})"
    )]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("malformed bracket [{lo}, {hi}] with tolerance {tol}")]
    MalformedBracket { lo: f64, hi: f64, tol: f64 },
    #[error("horizon {horizon} is shorter than the required minimum {min}")]
    HorizonTooShort { horizon: usize, min: usize },
    #[error("plan is not interruptible; preemptions are undefined for contract schedules")]
    NotInterruptible,
    #[error("unsupported plan configuration: {0}")]
    Unsupported(&'static str),
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
    #[error("claim `{claim}` requires parameter `{name}`")]
    MissingParameter {
        claim: &'static str,
        name: &'static str,
    },
    #[error("unknown claim subset `{0}`")]
    UnknownSubset(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_base(b: f64) -> Result<()> {
    if b.is_finite() && b > 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "b",
            value: b,
            reason: "base must exceed 1",
        })
    }
}

pub(crate) fn check_rays(m: usize) -> Result<()> {
    if m >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "m",
            value: m as f64,
            reason: "at least two rays are required",
        })
    }
}

pub(crate) fn check_problems(n: usize) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            reason: "at least one problem is required",
        })
    }
}

pub(crate) fn check_redundancy(r: u32) -> Result<()> {
    if r >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "r",
            value: 0.0,
            reason: "redundancy must be at least 1",
        })
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "probability must lie in (0, 1]",
        })
    }
}
