//! m-ray search plans and their deterministic excursion traces.
//!
//! A plan is an infinite sequence of excursions generated on demand from a
//! closed-form depth rule. Excursion `i` explores ray `i mod m`; depths are
//! indexed so that `x_j = 0` for every `j < 0`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{check_base, check_rays, check_redundancy, Error, Result};

/// How traversed distance is charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CostModel {
    /// Every unit of movement costs, including returns to the origin.
    Standard,
    /// Only newly explored territory costs; the searcher resumes each ray at
    /// its explored frontier for free. A newly explored segment counts as
    /// searched once the extension ends at its turn point.
    Expanding,
}

impl fmt::Display for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostModel::Standard => f.write_str("standard"),
            CostModel::Expanding => f.write_str("expanding"),
        }
    }
}

/// Strategy descriptor carried by a plan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SearchTag {
    Exponential { base: f64 },
    NmSearch { base: f64, redundancy: u32 },
    Geometric { base: f64 },
    Custom,
}

impl SearchTag {
    pub fn name(&self) -> &'static str {
        match self {
            SearchTag::Exponential { .. } => "exponential",
            SearchTag::NmSearch { .. } => "nm",
            SearchTag::Geometric { .. } => "geometric",
            SearchTag::Custom => "custom",
        }
    }

    pub fn base(&self) -> Option<f64> {
        match *self {
            SearchTag::Exponential { base }
            | SearchTag::NmSearch { base, .. }
            | SearchTag::Geometric { base } => Some(base),
            SearchTag::Custom => None,
        }
    }

    /// Number of excursions after which a geometric plan repeats itself up
    /// to scaling and ray relabelling. `None` for custom plans.
    pub fn self_similar_period(&self, ray_count: usize) -> Option<usize> {
        match self {
            SearchTag::Exponential { .. } | SearchTag::NmSearch { .. } => Some(1),
            SearchTag::Geometric { .. } => Some(ray_count),
            SearchTag::Custom => None,
        }
    }
}

/// Closed-form depth rule `i -> x_i` for `i >= 0`.
#[derive(Clone)]
enum Depths {
    /// `x_i = scale * b^i`.
    Power { scale: f64, base: f64 },
    /// `x_i = scale * (b^(p+1) - 1) / (b - 1)` with phase `p = i / m`: each
    /// phase extends every ray by `scale * b^p`.
    PhaseSum { scale: f64, base: f64, rays: usize },
    Custom {
        scale: f64,
        f: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
    },
}

impl Depths {
    fn at(&self, i: usize) -> f64 {
        match self {
            Depths::Power { scale, base } => scale * base.powi(i as i32),
            Depths::PhaseSum { scale, base, rays } => {
                let phase = (i / rays) as i32;
                scale * (base.powi(phase + 1) - 1.0) / (base - 1.0)
            }
            Depths::Custom { scale, f } => scale * f(i),
        }
    }

    fn scaled(&self, c: f64) -> Depths {
        match self {
            Depths::Power { scale, base } => Depths::Power {
                scale: scale * c,
                base: *base,
            },
            Depths::PhaseSum { scale, base, rays } => Depths::PhaseSum {
                scale: scale * c,
                base: *base,
                rays: *rays,
            },
            Depths::Custom { scale, f } => Depths::Custom {
                scale: scale * c,
                f: Arc::clone(f),
            },
        }
    }
}

/// Movement pattern inside one excursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Traversal {
    /// Out to `x_i` and straight back.
    Simple,
    /// Walk to `x_{i-m}`, sweep `[x_{i-m}, x_i]` `r` times, return home.
    Redundant(u32),
}

/// One iteration of a search plan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Excursion {
    pub ray: usize,
    pub depth_outer: f64,
    pub depth_inner: f64,
}

/// An excursion annotated with its own cost and the running total.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExcursionStep {
    pub index: usize,
    pub excursion: Excursion,
    pub cost: f64,
    pub cumulative_cost: f64,
}

/// A straight movement along the excursion's ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Leg {
    pub from: f64,
    pub to: f64,
    /// Distance charged for this leg.
    pub charge: f64,
}

#[derive(Clone)]
pub struct SearchPlan {
    ray_count: usize,
    depths: Depths,
    traversal: Traversal,
    cost_model: CostModel,
    tag: SearchTag,
}

impl fmt::Debug for SearchPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchPlan")
            .field("ray_count", &self.ray_count)
            .field("traversal", &self.traversal)
            .field("cost_model", &self.cost_model)
            .field("tag", &self.tag)
            .finish()
    }
}

impl SearchPlan {
    pub(crate) fn power(m: usize, base: f64, traversal: Traversal, tag: SearchTag) -> Result<Self> {
        check_rays(m)?;
        check_base(base)?;
        if let Traversal::Redundant(r) = traversal {
            check_redundancy(r)?;
        }
        Ok(SearchPlan {
            ray_count: m,
            depths: Depths::Power { scale: 1.0, base },
            traversal,
            cost_model: CostModel::Standard,
            tag,
        })
    }

    pub(crate) fn phase_sum(m: usize, base: f64) -> Result<Self> {
        check_rays(m)?;
        check_base(base)?;
        Ok(SearchPlan {
            ray_count: m,
            depths: Depths::PhaseSum {
                scale: 1.0,
                base,
                rays: m,
            },
            traversal: Traversal::Simple,
            cost_model: CostModel::Expanding,
            tag: SearchTag::Geometric { base },
        })
    }

    /// Escape hatch: a cyclic plan driven by an arbitrary depth function.
    ///
    /// Under [`CostModel::Expanding`] the depth function must be
    /// non-decreasing along each ray, since only new territory is charged.
    pub fn custom<F>(
        m: usize,
        depth: F,
        traversal: Traversal,
        cost_model: CostModel,
    ) -> Result<Self>
    where
        F: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        check_rays(m)?;
        if let Traversal::Redundant(r) = traversal {
            check_redundancy(r)?;
            if cost_model == CostModel::Expanding {
                return Err(Error::Unsupported(
                    "redundant traversals are only defined under the standard cost model",
                ));
            }
        }
        Ok(SearchPlan {
            ray_count: m,
            depths: Depths::Custom {
                scale: 1.0,
                f: Arc::new(depth),
            },
            traversal,
            cost_model,
            tag: SearchTag::Custom,
        })
    }

    pub fn ray_count(&self) -> usize {
        self.ray_count
    }

    pub fn cost_model(&self) -> CostModel {
        self.cost_model
    }

    pub fn traversal(&self) -> Traversal {
        self.traversal
    }

    pub fn tag(&self) -> SearchTag {
        self.tag
    }

    /// Same plan with every depth multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParameter {
                name: "c",
                value: c,
                reason: "scale must be positive",
            });
        }
        Ok(SearchPlan {
            depths: self.depths.scaled(c),
            ..self.clone()
        })
    }

    /// `x_j`, with `x_j = 0` for negative `j`.
    pub fn depth(&self, j: i64) -> f64 {
        if j < 0 {
            0.0
        } else {
            self.depths.at(j as usize)
        }
    }

    pub fn excursion(&self, i: usize) -> Excursion {
        let outer = self.depth(i as i64);
        let inner = match (self.traversal, self.cost_model) {
            (Traversal::Simple, CostModel::Standard) => 0.0,
            _ => self.depth(i as i64 - self.ray_count as i64),
        };
        debug_assert!(outer > 0.0, "excursion depths must be positive");
        Excursion {
            ray: i % self.ray_count,
            depth_outer: outer,
            depth_inner: inner,
        }
    }

    /// Distance charged for excursion `i`.
    pub fn excursion_cost(&self, i: usize) -> f64 {
        let e = self.excursion(i);
        match (self.cost_model, self.traversal) {
            (CostModel::Expanding, _) => e.depth_outer - e.depth_inner,
            (CostModel::Standard, Traversal::Simple) => 2.0 * e.depth_outer,
            (CostModel::Standard, Traversal::Redundant(r)) => {
                let span = e.depth_outer - e.depth_inner;
                let end = if r % 2 == 0 {
                    e.depth_inner
                } else {
                    e.depth_outer
                };
                e.depth_inner + f64::from(r) * span + end
            }
        }
    }

    /// The movement legs of excursion `i`, in order.
    pub(crate) fn legs(&self, i: usize) -> Vec<Leg> {
        let e = self.excursion(i);
        let (inner, outer) = (e.depth_inner, e.depth_outer);
        let leg = |from: f64, to: f64| Leg {
            from,
            to,
            charge: (to - from).abs(),
        };
        match (self.cost_model, self.traversal) {
            (CostModel::Expanding, _) => vec![leg(inner, outer)],
            (CostModel::Standard, Traversal::Simple) => vec![leg(0.0, outer), leg(outer, 0.0)],
            (CostModel::Standard, Traversal::Redundant(r)) => {
                let mut legs = Vec::with_capacity(r as usize + 2);
                if inner > 0.0 {
                    legs.push(leg(0.0, inner));
                }
                let mut at = inner;
                for _ in 0..r {
                    let next = if at == inner { outer } else { inner };
                    legs.push(leg(at, next));
                    at = next;
                }
                legs.push(leg(at, 0.0));
                legs
            }
        }
    }
}

/// Excursions `0..count` with cost annotations under the plan's cost model.
pub fn excursion_prefix(plan: &SearchPlan, count: usize) -> Vec<ExcursionStep> {
    let mut cumulative = 0.0;
    (0..count)
        .map(|index| {
            let cost = plan.excursion_cost(index);
            cumulative += cost;
            ExcursionStep {
                index,
                excursion: plan.excursion(index),
                cost,
                cumulative_cost: cumulative,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legs_charge_matches_excursion_cost() {
        for r in 1..=5 {
            let plan =
                SearchPlan::power(3, 1.7, Traversal::Redundant(r), SearchTag::Custom).unwrap();
            for i in 0..12 {
                let charged: f64 = plan.legs(i).iter().map(|l| l.charge).sum();
                assert!((charged - plan.excursion_cost(i)).abs() < 1e-9 * charged);
            }
        }
    }

    #[test]
    fn negative_indices_have_zero_depth() {
        let plan = SearchPlan::power(2, 2.0, Traversal::Simple, SearchTag::Custom).unwrap();
        assert_eq!(plan.depth(-1), 0.0);
        assert_eq!(plan.depth(-7), 0.0);
        assert_eq!(plan.depth(0), 1.0);
    }

    #[test]
    fn expanding_redundant_custom_is_rejected() {
        let err = SearchPlan::custom(
            2,
            |i| (i + 1) as f64,
            Traversal::Redundant(2),
            CostModel::Expanding,
        );
        assert!(matches!(err, Err(Error::Unsupported(_))));
    }

    #[test]
    fn scaling_rejects_non_positive() {
        let plan = SearchPlan::power(2, 2.0, Traversal::Simple, SearchTag::Custom).unwrap();
        assert!(plan.scaled(0.0).is_err());
        assert!(plan.scaled(-1.0).is_err());
    }
}
