//! Constructors for the search and scheduling strategies.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_base, check_problems, check_rays, Result};
use crate::schedule_plan::SchedulePlan;
use crate::search_plan::{SearchPlan, SearchTag, Traversal};

/// Cyclic search with `x_i = b^i`.
pub fn make_exponential_search(m: usize, b: f64) -> Result<SearchPlan> {
    SearchPlan::power(m, b, Traversal::Simple, SearchTag::Exponential { base: b })
}

/// Base `m / (m - 1)` of the optimal exponential m-ray strategy.
pub fn optimal_base_search(m: usize) -> Result<f64> {
    check_rays(m)?;
    Ok(m as f64 / (m as f64 - 1.0))
}

/// Non-monotone search: iteration `i` walks to `x_{i-m}`, sweeps
/// `[x_{i-m}, x_i]` `r` times and returns to the origin.
pub fn make_nm_search(m: usize, b: f64, r: u32) -> Result<SearchPlan> {
    SearchPlan::power(
        m,
        b,
        Traversal::Redundant(r),
        SearchTag::NmSearch {
            base: b,
            redundancy: r,
        },
    )
}

/// Round-robin search in the expanding model: phase `i` extends every ray
/// by `b^i`.
pub fn make_geometric_search(m: usize, b: f64) -> Result<SearchPlan> {
    SearchPlan::phase_sum(m, b)
}

/// Cyclic schedule with job `i` of length `b^i` for problem `i mod n`.
pub fn make_exponential_schedule(n: usize, b: f64) -> Result<SchedulePlan> {
    SchedulePlan::exponential(n, b)
}

/// Base `(n + 1) / n` of the optimal exponential n-problem schedule.
pub fn optimal_base_schedule(n: usize) -> Result<f64> {
    check_problems(n)?;
    Ok((n as f64 + 1.0) / n as f64)
}

/// Phase `i` runs `r` contracts of length `b^i` for problem `i mod n`.
pub fn make_pseudo_exponential_schedule(n: usize, b: f64, r: u32) -> Result<SchedulePlan> {
    SchedulePlan::pseudo(n, b, r)
}

/// Interruptible round robin: phase `i` gives every problem a span of `b^i`.
pub fn make_geometric_rr_schedule(n: usize, b: f64) -> Result<SchedulePlan> {
    SchedulePlan::round_robin(n, b)
}

/// The random choices behind a randomized schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomizedDraw {
    pub permutation: Vec<usize>,
    pub epsilon: f64,
}

impl RandomizedDraw {
    /// Uniform permutation of `0..n` and offset in `[0, 1)` from `rng`.
    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RandomizedDraw {
        let mut permutation: Vec<usize> = (0..n).collect();
        permutation.shuffle(rng);
        let epsilon = rng.gen::<f64>();
        RandomizedDraw {
            permutation,
            epsilon,
        }
    }

    /// Draw number `stream` of the generator keyed by `seed`.
    pub fn from_seed(n: usize, seed: u64, stream: u64) -> RandomizedDraw {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomizedDraw::sample(n, &mut rng)
    }

    /// Identity permutation with the given offset.
    pub fn fixed(n: usize, epsilon: f64) -> RandomizedDraw {
        RandomizedDraw {
            permutation: (0..n).collect(),
            epsilon,
        }
    }
}

/// Job `i` serves problem `pi(i mod n)` with length `b^(i + eps)`, where
/// `pi` and `eps` are drawn deterministically from `seed`.
pub fn make_randomized_schedule(n: usize, b: f64, seed: u64) -> Result<SchedulePlan> {
    check_problems(n)?;
    check_base(b)?;
    make_randomized_schedule_with(n, b, RandomizedDraw::from_seed(n, seed, 0))
}

/// Randomized schedule for an explicit draw.
pub fn make_randomized_schedule_with(
    n: usize,
    b: f64,
    draw: RandomizedDraw,
) -> Result<SchedulePlan> {
    SchedulePlan::randomized(n, b, draw.permutation, draw.epsilon)
}
