use raysched::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

/// 1 + 2 b^K / (b - 1): exponential search needing `K / m` extra rounds.
fn exp_odd(b: f64, k: f64) -> f64 {
    1.0 + 2.0 * b.powf(k) / (b - 1.0)
}

/// 2 b^(K+1) / (b - 1) - 1: target found on an inward pass.
fn exp_even(b: f64, k: f64) -> f64 {
    2.0 * b.powf(k + 1.0) / (b - 1.0) - 1.0
}

#[test]
fn exponential_search_limits() {
    let plan = make_exponential_search(2, 2.0).unwrap();
    let r = competitive_ratio(&plan, SearchSemantics::FirstVisit, 400).unwrap();
    assert!(close(r.sup(), 9.0, 1e-9));
    assert_eq!(r.status, RatioStatus::Converged);

    let plan = make_exponential_search(3, 1.5).unwrap();
    let r = competitive_ratio(&plan, SearchSemantics::FirstVisit, 400).unwrap();
    assert!(close(r.sup(), 14.5, 1e-9));

    for m in 2..=8 {
        let b = optimal_base_search(m).unwrap();
        let plan = make_exponential_search(m, b).unwrap();
        let r = competitive_ratio(&plan, SearchSemantics::FirstVisit, 200).unwrap();
        assert!(close(r.sup(), exp_odd(b, m as f64), 1e-6), "m = {m}");
    }
}

#[test]
fn first_candidate_is_the_short_formula() {
    // the j = 0 candidate costs 2 sum_{i<m} b^i + 1
    let plan = make_exponential_search(2, 2.0).unwrap();
    let c = cost_to_visit(&plan, Target::just_beyond(0, 1.0), 1, 50)
        .unwrap()
        .cost();
    assert!(close(c, 7.0, 1e-12));
}

#[test]
fn finite_sup_grows_with_horizon() {
    let plan = make_exponential_search(3, 1.5).unwrap();
    let sups: Vec<f64> = [10, 50, 200]
        .iter()
        .map(|&h| {
            competitive_ratio(&plan, SearchSemantics::FirstVisit, h)
                .unwrap()
                .finite_sup
        })
        .collect();
    assert!(sups[0] <= sups[1] && sups[1] <= sups[2]);
    assert!(sups[2] <= 14.5 + 1e-9);
}

#[test]
fn rth_visit_one_is_first_visit() {
    for plan in [
        make_exponential_search(3, 1.7).unwrap(),
        make_nm_search(2, 2.0, 3).unwrap(),
        make_geometric_search(2, 1.5).unwrap(),
    ] {
        let a = competitive_ratio(&plan, SearchSemantics::FirstVisit, 60).unwrap();
        let b = competitive_ratio(&plan, SearchSemantics::RthVisit(1), 60).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn recurrence_cross_check() {
    // first pass just beyond x_j costs 2 sum_{i<j+m} x_i + x_j
    let (m, b) = (3, 1.5f64);
    let plan = make_exponential_search(m, b).unwrap();
    for j in 0..20 {
        let x = b.powi(j as i32);
        let c = cost_to_visit(&plan, Target::just_beyond(j % m, x), 1, 100)
            .unwrap()
            .cost();
        let sum: f64 = (0..j + m).map(|i| b.powi(i as i32)).sum();
        assert!(close(c, 2.0 * sum + x, 1e-12), "j = {j}");
    }
}

#[test]
fn redundant_exponential_search() {
    for m in [2usize, 3, 5] {
        for r in 1..=4u32 {
            let b = optimal_base_search(m).unwrap();
            let plan = make_exponential_search(m, b).unwrap();
            let rep = competitive_ratio(&plan, SearchSemantics::RthVisit(r), 200).unwrap();
            let expected = if r % 2 == 1 {
                exp_odd(b, (r.div_ceil(2) as usize * m) as f64)
            } else {
                exp_even(b, (r as usize * m / 2) as f64)
            };
            assert!(close(rep.sup(), expected, 1e-6), "m = {m}, r = {r}");
            assert!(rep.sup() >= (r as usize * m) as f64 / 2.0);
        }
    }
}

#[test]
fn nm_search_pass_enumeration() {
    // fourth pass over 1+ on ray 0: walk to 1, four sweeps of [1, 4]
    let plan = make_nm_search(2, 2.0, 4).unwrap();
    let c = cost_to_visit(&plan, Target::at(0, 1.0 + 1e-9), 4, 50)
        .unwrap()
        .cost();
    assert!(close(c, 12.0 + 1.0 + 12.0 - 1e-9, 1e-12));
}

#[test]
fn nm_search_limit() {
    // even r: r b^(m+1)/(b-1) + (2-r) b/(b-1) - 1
    let even =
        |m: i32, b: f64, r: f64| r * b.powi(m + 1) / (b - 1.0) + (2.0 - r) * b / (b - 1.0) - 1.0;
    for (m, r, b) in [(10usize, 4u32, 10.0 / 9.0), (2, 4, 2.0), (2, 2, 1.8)] {
        let plan = make_nm_search(m, b, r).unwrap();
        let rep = competitive_ratio(&plan, SearchSemantics::RthVisit(r), 200).unwrap();
        assert!(
            close(rep.asymptotic.unwrap(), even(m as i32, b, r as f64), 1e-6),
            "m = {m}, r = {r}"
        );
    }
    assert!(close(even(10, 10.0 / 9.0, 4.0), 93.7, 1e-3));
}

#[test]
fn nm_search_odd_redundancy() {
    // the r-th pass over x_j+ opens sweep r of iteration j + m
    let x = |b: f64, i: i64| if i < 0 { 0.0 } else { b.powi(i as i32) };
    let iteration = |b: f64, m: i64, r: u32, i: i64| {
        let (inner, outer) = (x(b, i - m), x(b, i));
        let end = if r.is_multiple_of(2) { inner } else { outer };
        inner + r as f64 * (outer - inner) + end
    };
    for (m, r, b) in [(3usize, 3u32, 1.5), (2, 1, 2.0), (4, 5, 1.3)] {
        let plan = make_nm_search(m, b, r).unwrap();
        let rep = competitive_ratio(&plan, SearchSemantics::RthVisit(r), 200).unwrap();
        let j = 150i64;
        let mi = m as i64;
        let before: f64 = (0..j + mi).map(|i| iteration(b, mi, r, i)).sum();
        let offset = x(b, j) + (r - 1) as f64 * (x(b, j + mi) - x(b, j));
        let oracle = (before + offset) / x(b, j);
        assert!(
            close(rep.asymptotic.unwrap(), oracle, 1e-6),
            "m = {m}, r = {r}: {rep:?}"
        );
    }
}

#[test]
fn geometric_search_expanding_ratios() {
    for m in [2usize, 3] {
        for b in [1.5, 2.0] {
            let plan = make_geometric_search(m, b).unwrap();
            let rep = competitive_ratio(&plan, SearchSemantics::FirstVisit, 200).unwrap();
            assert!(
                close(rep.sup(), (b + 1.0) * m as f64, 1e-6),
                "m = {m}, b = {b}"
            );
            assert!(close(rep.asymptotic.unwrap(), b * m as f64, 1e-6));
        }
    }
}

#[test]
fn scale_invariance() {
    let base = make_exponential_search(3, 1.8).unwrap();
    let a = competitive_ratio(&base, SearchSemantics::RthVisit(2), 80).unwrap();
    for c in [0.01, 3.0, 250.0] {
        let b =
            competitive_ratio(&base.scaled(c).unwrap(), SearchSemantics::RthVisit(2), 80).unwrap();
        assert!(close(a.finite_sup, b.finite_sup, 1e-12));
        assert!(close(a.sup(), b.sup(), 1e-12));
    }
}

#[test]
fn custom_plan_matches_builtin() {
    let builtin = make_exponential_search(2, 2.0).unwrap();
    let custom = SearchPlan::custom(
        2,
        |i| 2f64.powi(i as i32),
        Traversal::Simple,
        CostModel::Standard,
    )
    .unwrap();
    let a = competitive_ratio(&builtin, SearchSemantics::FirstVisit, 60).unwrap();
    let b = competitive_ratio(&custom, SearchSemantics::FirstVisit, 60).unwrap();
    assert!(close(a.finite_sup, b.finite_sup, 1e-12));
    assert!(b.limit_sup.is_none());
    assert!(matches!(b.status, RatioStatus::Unconverged { .. }));
}
