//! One-dimensional root finding and minimisation, the catalog of published
//! bounds, and the claim runner.

mod catalog;
mod claims;
mod solve;

pub use catalog::{closed_form, ClaimParams, CLAIM_IDS};
pub use claims::{log_grid, run_claim_catalog, ClaimConfig, ClaimSubset, EXACT_TOL};
pub use solve::{
    beta_r_star, beta_star, bisect_root, figure1_curve, golden_min, lemma_function, lemma_root,
    Bracket, Figure1Row,
};
