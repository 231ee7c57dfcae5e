use raysched::stochastic::*;
use raysched::*;

const HORIZON: usize = 200;

#[test]
fn certain_detection_reduces_to_first_visit() {
    let plan = make_exponential_search(3, 1.5).unwrap();
    for directions in [PassDirections::BothDirections, PassDirections::OutwardOnly] {
        let model = DetectionModel::new(1.0, directions).unwrap();
        for (ray, d) in [(0, 0.7), (1, 2.0), (2, 9.3)] {
            let target = Target::at(ray, d);
            let series = expected_search_cost(&plan, model, target, DEFAULT_TAIL_TOL).unwrap();
            let visit = cost_to_visit(&plan, target, 1, HORIZON).unwrap().cost();
            assert!(
                (series.expected - visit).abs() < 1e-9,
                "{directions:?} ray {ray} d {d}"
            );
        }
        let ratio = probabilistic_competitive_ratio(&plan, model, HORIZON)
            .unwrap()
            .sup();
        let det = competitive_ratio(&plan, SearchSemantics::FirstVisit, HORIZON)
            .unwrap()
            .sup();
        assert!((ratio - det).abs() < 1e-9, "{directions:?}");
    }
}

#[test]
fn series_agrees_with_monte_carlo() {
    let cases = [
        (
            make_exponential_search(2, 1.2).unwrap(),
            0.6,
            PassDirections::OutwardOnly,
            Target::at(1, 3.0),
        ),
        (
            make_exponential_search(3, 1.1).unwrap(),
            0.4,
            PassDirections::BothDirections,
            Target::at(0, 20.0),
        ),
        (
            make_nm_search(2, 1.3, 2).unwrap(),
            0.5,
            PassDirections::BothDirections,
            Target::at(1, 5.0),
        ),
        (
            make_nm_search(3, 1.1, 3).unwrap(),
            0.7,
            PassDirections::OutwardOnly,
            Target::at(2, 1.5),
        ),
    ];
    for (i, (plan, p, directions, target)) in cases.into_iter().enumerate() {
        let model = DetectionModel::new(p, directions).unwrap();
        let series = expected_search_cost(&plan, model, target, DEFAULT_TAIL_TOL).unwrap();
        let mc = mc_search_cost(&plan, model, target, 100_000, 11).unwrap();
        assert!(series.bounded, "case {i}");
        assert!(
            (series.expected - mc.mean).abs() <= 3.0 * mc.stderr,
            "case {i}: series {} vs MC {} +- {}",
            series.expected,
            mc.mean,
            mc.stderr
        );
    }
}

#[test]
fn monte_carlo_is_reproducible() {
    let plan = make_exponential_search(2, 1.2).unwrap();
    let model = DetectionModel::new(0.3, PassDirections::OutwardOnly).unwrap();
    let a = mc_search_cost(&plan, model, Target::at(0, 4.0), 5_000, 42).unwrap();
    let b = mc_search_cost(&plan, model, Target::at(0, 4.0), 5_000, 42).unwrap();
    let c = mc_search_cost(&plan, model, Target::at(0, 4.0), 5_000, 43).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.mean, c.mean);
}

#[test]
fn detection_ratio_within_published_bounds() {
    for (m, p) in [(2usize, 0.3), (3, 0.5), (5, 0.8)] {
        let b = detection_base(m, p).unwrap();
        let plan = make_exponential_search(m, b).unwrap();
        let model = DetectionModel::new(p, PassDirections::OutwardOnly).unwrap();
        let report = probabilistic_competitive_ratio(&plan, model, HORIZON).unwrap();
        assert_eq!(report.status, RatioStatus::Converged);
        let mf = m as f64;
        assert!(report.sup() <= 1.0 + 8.0 * mf / (p * p), "m={m}, p={p}");
        assert!(report.sup() >= mf / (2.0 * p), "m={m}, p={p}");
    }
}

#[test]
fn mc_contracts_reduce_to_deterministic_at_certainty() {
    for n in 1..=6usize {
        let b = optimal_base_schedule(n).unwrap();
        let mc = expected_acc_ratio_mc_contracts(n, 1.0, b, HORIZON)
            .unwrap()
            .sup();
        let det = acceleration_ratio(
            &make_exponential_schedule(n, b).unwrap(),
            ScheduleSemantics::LongestCompleted,
            HORIZON,
        )
        .unwrap()
        .sup();
        assert!((mc - det).abs() < 1e-9, "n={n}");
    }
}

#[test]
fn mc_contracts_within_upper_bound() {
    for n in [1usize, 2, 4] {
        let b = optimal_base_schedule(n).unwrap();
        for p in [0.3, 0.7] {
            let got = expected_acc_ratio_mc_contracts(n, p, b, HORIZON)
                .unwrap()
                .sup();
            let bound = std::f64::consts::E * (n as f64 + 1.0) / p;
            assert!(got <= bound, "n={n}, p={p}: {got} > {bound}");
        }
    }
}

#[test]
fn randomized_schedule_matches_closed_form() {
    for (n, b) in [(1usize, 2.0), (2, 1.5), (3, 1.8)] {
        let params = RandomizedScheduleParams::standard(n, b).unwrap();
        let beta = beta_r_closed_form(n, b).unwrap();
        let quad = quadrature_randomized_schedule_ratio(&params).unwrap();
        assert_eq!(quad.running_index_violations, 0);
        for point in &quad.points {
            assert!(
                (point.ratio - point.closed_form_ratio).abs() <= 1e-3 * point.closed_form_ratio,
                "n={n}, b={b}, k={}, delta={}",
                point.at.k,
                point.at.delta
            );
        }
        assert!(quad.report.finite_sup <= beta * 1.001, "n={n}, b={b}");

        let mc = mc_randomized_schedule_ratio(&params, 50_000, 3).unwrap();
        assert_eq!(mc.running_index_violations, 0);
        assert!(
            (mc.report.finite_sup - beta).abs() <= 0.02 * beta,
            "n={n}, b={b}"
        );
    }
}
