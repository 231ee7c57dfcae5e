use std::error::Error;
use std::process::ExitCode;

use raysched::numopt::{beta_r_star, figure1_curve, log_grid, run_claim_catalog, ClaimConfig};
use raysched::stochastic::{
    beta_r_closed_form, detection_base, expected_search_cost, mc_randomized_schedule_ratio,
    mc_search_cost, probabilistic_competitive_ratio, quadrature_randomized_schedule_ratio,
    DetectionModel, RandomizedScheduleParams, DEFAULT_TAIL_TOL,
};
use raysched::{
    acceleration_ratio, competitive_ratio, contract_bound, contract_count,
    make_exponential_schedule, make_exponential_search, make_geometric_rr_schedule,
    make_geometric_search, make_nm_search, make_pseudo_exponential_schedule,
    make_randomized_schedule, optimal_base_schedule, optimal_base_search, preemption_bound,
    preemption_count, turn_bound, turn_count, CostModel, PassDirections, RatioReport,
    ScheduleSemantics, SearchPlan, SearchSemantics, Target, TurnAccounting, Verdict,
};

use crate::output::{Cell, Table};
use crate::{
    ClaimsArgs, CostModelArg, CurveArgs, DirectionsArg, OptBaseArgs, OptTarget, OutputArgs,
    ProbSearchArgs, RandMethod, RandSchedArgs, SchedEvalArgs, ScheduleStrategy, SearchEvalArgs,
    SearchStrategy, SemanticsArg, TradeoffArgs, TradeoffModel,
};

pub type CmdResult = Result<ExitCode, Box<dyn Error>>;

/// `(count, bound)` at a time or distance budget.
type Counter = Box<dyn FnMut(f64) -> Result<(usize, f64), Box<dyn Error>>>;

const REPORT_FIELDS: [&str; 6] = [
    "finite_sup",
    "limit_sup",
    "asymptotic",
    "witness",
    "witness_index",
    "status",
];

fn report_cells(r: &RatioReport) -> Vec<Cell> {
    vec![
        r.finite_sup.into(),
        r.limit_sup.into(),
        r.asymptotic.into(),
        r.witness.into(),
        r.witness_index.into(),
        r.status.to_string().into(),
    ]
}

fn header(lead: &[&'static str], tail: &[&'static str]) -> Vec<&'static str> {
    lead.iter().chain(tail).copied().collect()
}

fn emit(table: Table, out: &OutputArgs) -> CmdResult {
    table.emit(out.format, out.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn strategy_name(s: SearchStrategy) -> &'static str {
    match s {
        SearchStrategy::Exponential => "exponential",
        SearchStrategy::Nm => "nm",
        SearchStrategy::Geometric => "geometric",
    }
}

fn build_search(
    strategy: SearchStrategy,
    m: usize,
    b: Option<f64>,
    r: u32,
) -> Result<(SearchPlan, f64), Box<dyn Error>> {
    let b = match (b, strategy) {
        (Some(b), _) => b,
        (None, SearchStrategy::Geometric) => 2.0,
        (None, _) => optimal_base_search(m)?,
    };
    let plan = match strategy {
        SearchStrategy::Exponential => make_exponential_search(m, b)?,
        SearchStrategy::Nm => make_nm_search(m, b, r)?,
        SearchStrategy::Geometric => make_geometric_search(m, b)?,
    };
    Ok((plan, b))
}

pub fn search_eval(a: &SearchEvalArgs) -> CmdResult {
    let (plan, b) = build_search(a.strategy, a.m, a.b, a.r)?;
    let model = plan.cost_model();
    if let Some(requested) = a.cost_model {
        let requested = match requested {
            CostModelArg::Standard => CostModel::Standard,
            CostModelArg::Expanding => CostModel::Expanding,
        };
        if requested != model {
            return Err(format!(
                "{} search is only defined under the {model} cost model",
                strategy_name(a.strategy)
            )
            .into());
        }
    }
    let visits = a.visits.unwrap_or(if a.strategy == SearchStrategy::Nm {
        a.r
    } else {
        1
    });
    let sem = match visits {
        0 => return Err("--visits must be at least 1".into()),
        1 => SearchSemantics::FirstVisit,
        k => SearchSemantics::RthVisit(k),
    };
    let report = competitive_ratio(&plan, sem, a.horizon)?;
    let mut table = Table::new(&header(
        &["strategy", "m", "b", "r", "cost_model", "visits", "horizon"],
        &REPORT_FIELDS,
    ));
    let mut row: Vec<Cell> = vec![
        strategy_name(a.strategy).into(),
        a.m.into(),
        b.into(),
        a.r.into(),
        model.to_string().into(),
        visits.into(),
        a.horizon.into(),
    ];
    row.extend(report_cells(&report));
    table.push(row);
    emit(table, &a.output)
}

pub fn sched_eval(a: &SchedEvalArgs) -> CmdResult {
    let b = match a.b {
        Some(b) => b,
        None => optimal_base_schedule(a.n)?,
    };
    let (plan, name) = match a.strategy {
        ScheduleStrategy::Exponential => (make_exponential_schedule(a.n, b)?, "exponential"),
        ScheduleStrategy::Pseudo => (make_pseudo_exponential_schedule(a.n, b, a.r)?, "pseudo"),
        ScheduleStrategy::GeometricRr => (make_geometric_rr_schedule(a.n, b)?, "geometric-rr"),
        ScheduleStrategy::Randomized => (make_randomized_schedule(a.n, b, a.seed)?, "randomized"),
    };
    let semantics = a
        .semantics
        .unwrap_or(if a.strategy == ScheduleStrategy::GeometricRr {
            SemanticsArg::Aggregate
        } else {
            SemanticsArg::Longest
        });
    let (sem, sem_name) = match semantics {
        SemanticsArg::Longest => (ScheduleSemantics::LongestCompleted, "longest"),
        SemanticsArg::RCompleted => (ScheduleSemantics::RTimesCompleted(a.r), "r-completed"),
        SemanticsArg::RthLargest => (ScheduleSemantics::RthLargestCompleted(a.r), "rth-largest"),
        SemanticsArg::Aggregate => (ScheduleSemantics::AggregateInterruptible, "aggregate"),
    };
    let report = acceleration_ratio(&plan, sem, a.horizon)?;
    let mut table = Table::new(&header(
        &["strategy", "n", "b", "r", "semantics", "seed", "horizon"],
        &REPORT_FIELDS,
    ));
    let mut row: Vec<Cell> = vec![
        name.into(),
        a.n.into(),
        b.into(),
        a.r.into(),
        sem_name.into(),
        a.seed.into(),
        a.horizon.into(),
    ];
    row.extend(report_cells(&report));
    table.push(row);
    emit(table, &a.output)
}

pub fn prob_search(a: &ProbSearchArgs) -> CmdResult {
    let (directions, dir_name) = match a.directions {
        DirectionsArg::Both => (PassDirections::BothDirections, "both"),
        DirectionsArg::Outward => (PassDirections::OutwardOnly, "outward"),
    };
    let model = DetectionModel::new(a.p, directions)?;
    let b = match (a.b, a.strategy) {
        (Some(b), _) => Some(b),
        (None, SearchStrategy::Geometric) => None,
        (None, _) => Some(detection_base(a.m, a.p)?),
    };
    let (plan, b) = build_search(a.strategy, a.m, b, a.r)?;
    let target = Target::at(a.ray, a.distance);
    let report = probabilistic_competitive_ratio(&plan, model, a.horizon)?;
    let series = expected_search_cost(&plan, model, target, DEFAULT_TAIL_TOL)?;
    let mc = mc_search_cost(&plan, model, target, a.trials, a.seed)?;
    let mut table = Table::new(&header(
        &["strategy", "m", "b", "r", "p", "directions", "horizon"],
        &[
            "finite_sup",
            "limit_sup",
            "asymptotic",
            "witness",
            "witness_index",
            "status",
            "target_ray",
            "target_distance",
            "series_cost",
            "series_tail_bound",
            "series_terms",
            "mc_mean",
            "mc_stderr",
            "trials",
            "seed",
        ],
    ));
    let mut row: Vec<Cell> = vec![
        strategy_name(a.strategy).into(),
        a.m.into(),
        b.into(),
        a.r.into(),
        a.p.into(),
        dir_name.into(),
        a.horizon.into(),
    ];
    row.extend(report_cells(&report));
    row.extend([
        a.ray.into(),
        a.distance.into(),
        if series.bounded {
            series.expected
        } else {
            f64::INFINITY
        }
        .into(),
        series.tail_bound.into(),
        series.terms.into(),
        mc.mean.into(),
        mc.stderr.into(),
        mc.trials.into(),
        mc.seed.into(),
    ]);
    table.push(row);
    emit(table, &a.output)
}

pub fn rand_sched(a: &RandSchedArgs) -> CmdResult {
    let b = match a.b {
        Some(b) => b,
        None => beta_r_star(a.n)?.0,
    };
    let params = RandomizedScheduleParams::standard(a.n, b)?;
    let (result, method) = match a.method {
        RandMethod::Mc => (
            mc_randomized_schedule_ratio(&params, a.trials, a.seed)?,
            "mc",
        ),
        RandMethod::Quadrature => (quadrature_randomized_schedule_ratio(&params)?, "quadrature"),
    };
    let table = if a.points {
        let mut table = Table::new(&[
            "k",
            "delta",
            "t",
            "expected_d",
            "stderr",
            "ratio",
            "closed_form_ratio",
        ]);
        for p in &result.points {
            table.push(vec![
                p.at.k.into(),
                p.at.delta.into(),
                p.t.into(),
                p.expected_d.into(),
                p.stderr.into(),
                p.ratio.into(),
                p.closed_form_ratio.into(),
            ]);
        }
        table
    } else {
        let beta = beta_r_closed_form(a.n, b)?;
        let sup = result.report.finite_sup;
        let mut table = Table::new(&[
            "n",
            "b",
            "trials",
            "seed",
            "method",
            "sup",
            "beta_r",
            "rel_gap",
            "running_index_violations",
        ]);
        table.push(vec![
            a.n.into(),
            b.into(),
            a.trials.into(),
            a.seed.into(),
            method.into(),
            sup.into(),
            beta.into(),
            ((sup - beta) / beta).into(),
            result.running_index_violations.into(),
        ]);
        table
    };
    emit(table, &a.output)
}

pub fn opt_base(a: &OptBaseArgs) -> CmdResult {
    let (name, size, p, b, value) = match a.target {
        OptTarget::Search => {
            let b = optimal_base_search(a.m)?;
            let plan = make_exponential_search(a.m, b)?;
            let value = competitive_ratio(&plan, SearchSemantics::FirstVisit, a.horizon)?.sup();
            ("search", a.m, None, b, value)
        }
        OptTarget::Schedule => {
            let b = optimal_base_schedule(a.n)?;
            let plan = make_exponential_schedule(a.n, b)?;
            let value =
                acceleration_ratio(&plan, ScheduleSemantics::LongestCompleted, a.horizon)?.sup();
            ("schedule", a.n, None, b, value)
        }
        OptTarget::BetaR => {
            let (b, value) = beta_r_star(a.n)?;
            ("beta-r", a.n, None, b, value)
        }
        OptTarget::Detection => {
            let b = detection_base(a.m, a.p)?;
            let plan = make_exponential_search(a.m, b)?;
            let model = DetectionModel::new(a.p, PassDirections::OutwardOnly)?;
            let value = probabilistic_competitive_ratio(&plan, model, a.horizon)?.sup();
            ("detection", a.m, Some(a.p), b, value)
        }
    };
    let mut table = Table::new(&["target", "size", "p", "b_star", "value"]);
    table.push(vec![
        name.into(),
        size.into(),
        p.into(),
        b.into(),
        value.into(),
    ]);
    emit(table, &a.output)
}

pub fn tradeoff(a: &TradeoffArgs) -> CmdResult {
    let times = if a.t.is_empty() {
        log_grid(0.5, 1e6, 20)
    } else {
        a.t.clone()
    };
    let mut table = Table::new(&["model", "size", "b", "t", "count", "bound", "within"]);
    let (name, size) = match a.model {
        TradeoffModel::Contracts => ("contracts", a.n),
        TradeoffModel::Preemptive => ("preemptive", a.n),
        TradeoffModel::Turns => ("turns", a.m),
        TradeoffModel::Expanding => ("expanding", a.m),
    };
    let mut counter: Counter = match a.model {
        TradeoffModel::Contracts => {
            let plan = make_exponential_schedule(a.n, a.b)?;
            let b = a.b;
            Box::new(move |t| Ok((contract_count(&plan, t), contract_bound(b, t)?)))
        }
        TradeoffModel::Preemptive => {
            let plan = make_geometric_rr_schedule(a.n, a.b)?;
            let (n, b) = (a.n, a.b);
            Box::new(move |t| Ok((preemption_count(&plan, t)?, preemption_bound(n, b, t)?)))
        }
        TradeoffModel::Turns => {
            let plan = make_exponential_search(a.m, a.b)?;
            let (m, b) = (a.m, a.b);
            Box::new(move |t| {
                Ok((
                    turn_count(&plan, t, TurnAccounting::OneWay),
                    turn_bound(m, b, t, CostModel::Standard)?,
                ))
            })
        }
        TradeoffModel::Expanding => {
            let plan = make_geometric_search(a.m, a.b)?;
            let (m, b) = (a.m, a.b);
            Box::new(move |t| {
                Ok((
                    turn_count(&plan, t, TurnAccounting::OneWay),
                    turn_bound(m, b, t, CostModel::Expanding)?,
                ))
            })
        }
    };
    for t in times {
        if !(t.is_finite() && t >= 0.0) {
            return Err(format!("invalid time {t}: must be finite and non-negative").into());
        }
        let (count, bound) = counter(t)?;
        table.push(vec![
            name.into(),
            size.into(),
            a.b.into(),
            t.into(),
            count.into(),
            bound.into(),
            (count as f64 <= bound).into(),
        ]);
    }
    emit(table, &a.output)
}

pub fn curve_fig1(a: &CurveArgs) -> CmdResult {
    let mut table = Table::new(&["n", "beta_star", "beta_r_star", "b_star", "ratio"]);
    for row in figure1_curve(a.n_max)? {
        table.push(vec![
            row.n.into(),
            row.beta_star.into(),
            row.beta_r_star.into(),
            row.b_star.into(),
            row.ratio.into(),
        ]);
    }
    emit(table, &a.output)
}

pub fn claims(a: &ClaimsArgs) -> CmdResult {
    let config = ClaimConfig {
        subset: a.subset,
        horizon: a.horizon,
        trials: a.trials,
        seed: a.seed,
    };
    let checks = run_claim_catalog(&config)?;
    let mut table = Table::new(&[
        "claim_id",
        "paper_value",
        "measured",
        "relation",
        "verdict",
        "gap",
    ]);
    let mut violated = false;
    for c in &checks {
        let verdict = match (c.informational, c.verdict) {
            (true, _) => "recorded",
            (false, Verdict::Holds) => "holds",
            (false, Verdict::Violated(_)) => {
                violated = true;
                "violated"
            }
        };
        table.push(vec![
            c.claim_id.clone().into(),
            c.paper_value.into(),
            c.measured.into(),
            c.relation.to_string().into(),
            verdict.into(),
            c.gap().into(),
        ]);
    }
    emit(table, &a.output)?;
    Ok(if a.strict && violated {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
