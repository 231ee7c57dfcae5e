use raysched::*;

const HORIZON: usize = 200;

fn sup(plan: &SchedulePlan, sem: ScheduleSemantics) -> f64 {
    acceleration_ratio(plan, sem, HORIZON).unwrap().sup()
}

#[test]
fn exponential_schedule_matches_closed_form() {
    for n in 1..=8usize {
        for b in [(n as f64 + 1.0) / n as f64, 2.0] {
            let plan = make_exponential_schedule(n, b).unwrap();
            let report =
                acceleration_ratio(&plan, ScheduleSemantics::LongestCompleted, HORIZON).unwrap();
            let expected = b.powi(n as i32 + 1) / (b - 1.0);
            assert_eq!(report.status, RatioStatus::Converged, "n={n}, b={b}");
            assert!(
                (report.sup() - expected).abs() < 1e-6,
                "n={n}, b={b}: {} vs {expected}",
                report.sup()
            );
        }
    }
}

#[test]
fn optimal_base_minimizes_the_exponential_ratio() {
    for n in 1..=4usize {
        let best = optimal_base_schedule(n).unwrap();
        let at_best = sup(
            &make_exponential_schedule(n, best).unwrap(),
            ScheduleSemantics::LongestCompleted,
        );
        for b in [best * 0.95, best * 1.05, 2.5] {
            let other = sup(
                &make_exponential_schedule(n, b).unwrap(),
                ScheduleSemantics::LongestCompleted,
            );
            assert!(other > at_best, "n={n}, b={b}");
        }
    }
}

#[test]
fn near_uniform_round_robin_approaches_n() {
    // ratios settle only once b^phase >> 1, about a thousand phases at b = 1.001
    for n in 1..=4usize {
        let plan = make_geometric_rr_schedule(n, 1.001).unwrap();
        let report =
            acceleration_ratio(&plan, ScheduleSemantics::AggregateInterruptible, 4000).unwrap();
        let asym = report.asymptotic.unwrap();
        assert!((asym - n as f64).abs() <= 0.01 * n as f64, "n={n}: {asym}");
    }
}

#[test]
fn pseudo_exponential_without_redundancy_is_exponential() {
    for n in 1..=3usize {
        let b = optimal_base_schedule(n).unwrap();
        let pseudo = sup(
            &make_pseudo_exponential_schedule(n, b, 1).unwrap(),
            ScheduleSemantics::RTimesCompleted(1),
        );
        let exp = sup(
            &make_exponential_schedule(n, b).unwrap(),
            ScheduleSemantics::LongestCompleted,
        );
        assert!((pseudo - exp).abs() < 1e-9, "n={n}");
    }
}

#[test]
fn pseudo_exponential_scales_with_redundancy() {
    for n in [1usize, 2, 4] {
        let b = optimal_base_schedule(n).unwrap();
        let base = b.powi(n as i32 + 1) / (b - 1.0);
        for r in 1..=4u32 {
            let plan = make_pseudo_exponential_schedule(n, b, r).unwrap();
            let got = sup(&plan, ScheduleSemantics::RTimesCompleted(r));
            assert!((got - r as f64 * base).abs() < 1e-6, "n={n}, r={r}: {got}");
        }
    }
}

#[test]
fn rth_largest_exponential_closed_form() {
    // exponential schedule with base (rn+1)/rn under the r-th largest rule
    for (n, r, expected) in [(1usize, 2u32, 6.75), (2, 2, 12.20703125)] {
        let rn = (r as usize * n) as f64;
        let plan = make_exponential_schedule(n, (rn + 1.0) / rn).unwrap();
        let got = sup(&plan, ScheduleSemantics::RthLargestCompleted(r));
        assert!((got - expected).abs() < 1e-6, "n={n}, r={r}: {got}");
    }
}

#[test]
fn scaled_schedule_keeps_its_ratio() {
    let plan = make_exponential_schedule(3, 1.5).unwrap();
    let base = sup(&plan, ScheduleSemantics::LongestCompleted);
    for c in [0.01, 3.0, 1e4] {
        let scaled = sup(
            &plan.scaled(c).unwrap(),
            ScheduleSemantics::LongestCompleted,
        );
        assert!((scaled - base).abs() < 1e-9 * base, "c={c}");
    }
}

#[test]
fn contract_plans_reject_preemption_queries() {
    let plan = make_exponential_schedule(2, 2.0).unwrap();
    assert_eq!(preemption_count(&plan, 10.0), Err(Error::NotInterruptible));
    assert!(acceleration_ratio(&plan, ScheduleSemantics::LongestCompleted, 1).is_err());
}
