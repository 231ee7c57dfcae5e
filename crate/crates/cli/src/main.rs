mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use raysched::numopt::ClaimSubset;

use crate::output::Format;

#[derive(Parser)]
#[command(
    name = "raysched",
    version,
    about = "Ray search and interruptible scheduling workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchStrategy {
    Exponential,
    Nm,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CostModelArg {
    Standard,
    Expanding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleStrategy {
    Exponential,
    Pseudo,
    GeometricRr,
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Longest,
    RCompleted,
    RthLargest,
    Aggregate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionsArg {
    Both,
    Outward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RandMethod {
    Mc,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OptTarget {
    Search,
    Schedule,
    BetaR,
    Detection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TradeoffModel {
    Contracts,
    Preemptive,
    Turns,
    Expanding,
}

#[derive(Args)]
pub struct SearchEvalArgs {
    #[arg(long, value_enum, default_value_t = SearchStrategy::Exponential)]
    pub strategy: SearchStrategy,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Base; defaults to m/(m-1) (2 for geometric).
    #[arg(long)]
    pub b: Option<f64>,
    /// Redundancy of the NM strategy.
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    /// Must match the strategy: geometric is expanding, the others standard.
    #[arg(long, value_enum)]
    pub cost_model: Option<CostModelArg>,
    /// Visit required to find the target; defaults to r for nm, else 1.
    #[arg(long)]
    pub visits: Option<u32>,
    #[arg(long, default_value_t = 200)]
    pub horizon: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct SchedEvalArgs {
    #[arg(long, value_enum, default_value_t = ScheduleStrategy::Exponential)]
    pub strategy: ScheduleStrategy,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Base; defaults to (n+1)/n.
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    /// Defaults to aggregate for geometric-rr, longest otherwise.
    #[arg(long, value_enum)]
    pub semantics: Option<SemanticsArg>,
    #[arg(long, default_value_t = 200)]
    pub horizon: usize,
    /// Seed of the randomized strategy's draw.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct ProbSearchArgs {
    #[arg(long, value_enum, default_value_t = SearchStrategy::Exponential)]
    pub strategy: SearchStrategy,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Base; defaults to m/(m - x*) with x* the lemma root for p.
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long)]
    pub p: f64,
    #[arg(long, value_enum, default_value_t = DirectionsArg::Outward)]
    pub directions: DirectionsArg,
    #[arg(long, default_value_t = 0)]
    pub ray: usize,
    #[arg(long, default_value_t = 10.0)]
    pub distance: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub horizon: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct RandSchedArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Base; defaults to the minimizer of the randomized ratio.
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = RandMethod::Mc)]
    pub method: RandMethod,
    /// Emit one row per interruption time instead of the summary.
    #[arg(long)]
    pub points: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct OptBaseArgs {
    #[arg(long, value_enum)]
    pub target: OptTarget,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 200)]
    pub horizon: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct TradeoffArgs {
    #[arg(long, value_enum)]
    pub model: TradeoffModel,
    /// Problem count for contracts and preemptive.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Ray count for turns and expanding.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    /// Times (or distance budgets); defaults to 20 log-spaced points on [0.5, 1e6].
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct CurveArgs {
    #[arg(long, default_value_t = 80)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_subset(s: &str) -> Result<ClaimSubset, String> {
    s.parse().map_err(|e: raysched::Error| e.to_string())
}

#[derive(Args)]
pub struct ClaimsArgs {
    #[arg(long, default_value = "all", value_parser = parse_subset)]
    pub subset: ClaimSubset,
    /// Exit 1 if any asserted claim is violated.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 200)]
    pub horizon: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Competitive ratio of a deterministic m-ray search strategy.
    SearchEval(SearchEvalArgs),
    /// Acceleration ratio of an interruptible schedule.
    SchedEval(SchedEvalArgs),
    /// Search with probabilistic detection: ratio and expected cost at a target.
    ProbSearch(ProbSearchArgs),
    /// Expected acceleration ratio of the randomized schedule.
    RandSched(RandSchedArgs),
    /// Optimal base for a search, schedule or detection problem.
    OptBase(OptBaseArgs),
    /// Counts of contracts, preemptions or turns against their bounds.
    Tradeoff(TradeoffArgs),
    /// Deterministic versus randomized optimal acceleration ratios.
    CurveFig1(CurveArgs),
    /// Check published values against measurements.
    Claims(ClaimsArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::SearchEval(a) => commands::search_eval(&a),
        Command::SchedEval(a) => commands::sched_eval(&a),
        Command::ProbSearch(a) => commands::prob_search(&a),
        Command::RandSched(a) => commands::rand_sched(&a),
        Command::OptBase(a) => commands::opt_base(&a),
        Command::Tradeoff(a) => commands::tradeoff(&a),
        Command::CurveFig1(a) => commands::curve_fig1(&a),
        Command::Claims(a) => commands::claims(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
