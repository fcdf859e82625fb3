//! Command-line front end for the repeated-game analysis kernel.
//!
//! Exit codes: `0` for success (including boundary and unknown verdicts),
//! `1` for a negative verdict (unstable plan, infeasible goal, no solution
//! within the budget or depth, cross-check mismatch), `2` for input or
//! usage errors.

mod formats;
mod report;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde::Serialize;

use rematch_core::existence::{construct_witness_plan, goal_feasibility, Feasibility};
use rematch_core::genhaze::GenhazeInstance;
use rematch_core::oracle::{brute_min_hazing_with_budget, cross_check, OracleStatus, DEFAULT_NODE_BUDGET};
use rematch_core::reduction::ussp_to_game;
use rematch_core::solver::{assemble_and_verify, solve_dp, SolveStatus};
use rematch_core::stability::{check_finite_report, check_limit};
use rematch_core::{BigInt, BigRational, Game, GoalSequence, Status, Variant};

use formats::{
    parse_scaled, read_json, to_canonical_json, write_canonical, GameFile, GoalFile, InstanceFile,
    PlanFile, UsspFile,
};
use report::{
    AnalyzeReport, CheckReport, DeriveReport, FeasibleReport, OracleReport, ReduceReport,
    SolveReport,
};

#[derive(Parser)]
#[command(
    name = "rematch",
    version,
    about = "Analyze committed action sequences in repeated two-player games with partner restarts"
)]
struct Cli {
    /// Output format for reports on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// Restarts pair the deviator with a fresh partner in the same seat.
    Fixed,
    /// Restarts reassign seats uniformly at random.
    Reassign,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Fixed => Variant::FixedRole,
            VariantArg::Reassign => Variant::RandomReassignment,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a game: deviation payoffs, Nash pairs, welfare-maximal pairs.
    Analyze {
        /// Game file (JSON).
        game: PathBuf,
    },
    /// Decide whether any plan can stabilize a goal cycle.
    Feasible {
        game: PathBuf,
        /// Goal file (JSON), a non-empty cycle of action pairs.
        goal: PathBuf,
        /// On a feasible goal, also construct a stabilizing plan.
        #[arg(long)]
        witness: bool,
    },
    /// Derive a self-contained minimum-hazing instance from a game and goal.
    Derive {
        game: PathBuf,
        goal: PathBuf,
        /// Hazing budget as `P/Q` or an integer; defaults to the constructive
        /// bound read off the game when omitted.
        #[arg(long)]
        bound: Option<String>,
        /// Also write the instance to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a cheapest stabilizing prefix for an instance.
    Solve {
        /// Instance file (JSON), e.g. produced by `derive`.
        instance: PathBuf,
        /// Game file; with --goal, assembles the prefix into a plan and
        /// re-checks it with the independent limit-stability test.
        #[arg(long, requires = "goal")]
        game: Option<PathBuf>,
        #[arg(long, requires = "game")]
        goal: Option<PathBuf>,
        /// Write the assembled plan to this path (needs --game and --goal).
        #[arg(long, requires = "game")]
        out: Option<PathBuf>,
    },
    /// Check a plan's stability, either at an exact discount factor or in
    /// the patient limit.
    #[command(group(ArgGroup::new("mode").required(true).args(["beta", "limit"])))]
    Check(CheckArgs),
    /// Brute-force the minimum hazing total by exhaustive prefix search.
    Oracle {
        instance: PathBuf,
        /// Maximum prefix length to enumerate.
        #[arg(long)]
        max_len: usize,
        /// Abort after visiting this many search nodes.
        #[arg(long, conflicts_with = "cross_check")]
        budget: Option<u64>,
        /// Also run the grid solver and compare optimal totals.
        #[arg(long)]
        cross_check: bool,
    },
    /// Encode an unbounded subset-sum question as a game, goal, and budget.
    Reduce {
        /// Question file (JSON): positive integer values and a target sum.
        ussp: PathBuf,
        /// Write `<PREFIX>.game.json`, `<PREFIX>.goal.json`, and
        /// `<PREFIX>.instance.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    game: PathBuf,
    /// Plan file (JSON): a run-length-encoded prefix plus a goal cycle.
    plan: PathBuf,
    /// Exact discount factor `P/Q` with 0 < P/Q < 1; decimals are rejected.
    #[arg(long)]
    beta: Option<String>,
    /// Decide stability for all sufficiently patient players instead of a
    /// fixed discount factor.
    #[arg(long)]
    limit: bool,
    /// Restart variant; the patient-limit rule supports only `fixed`.
    #[arg(long, value_enum, default_value_t = VariantArg::Fixed)]
    variant: VariantArg,
}

/// Whether the verb's answer was affirmative; negative answers exit 1.
enum Outcome {
    Success,
    Negative,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success) => {}
        Ok(Outcome::Negative) => std::process::exit(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let format = cli.format;
    match cli.command {
        Command::Analyze { game } => {
            let game = load_game(&game)?;
            let report = AnalyzeReport::build(&game);
            emit(format, &report, || report.render());
            Ok(Outcome::Success)
        }
        Command::Feasible { game, goal, witness } => {
            let game = load_game(&game)?;
            let goal = load_goal(&goal, &game)?;
            let verdict = goal_feasibility(&game, &goal)?;
            let value = game.goal_value(&goal)?;
            let mut report = FeasibleReport::build(&game, value, &verdict);
            if witness {
                if let Feasibility::Feasible { pair } = verdict.status {
                    let plan = construct_witness_plan(&game, &goal, pair)
                        .context("constructing the witness plan")?;
                    report.witness_plan = Some(PlanFile::from_plan(&plan));
                }
            }
            emit(format, &report, || report.render());
            Ok(match verdict.status {
                Feasibility::Infeasible => Outcome::Negative,
                _ => Outcome::Success,
            })
        }
        Command::Derive { game, goal, bound, out } => {
            let game = load_game(&game)?;
            let goal = load_goal(&goal, &game)?;
            let bound = bound.as_deref().map(parse_scaled).transpose()?;
            let instance = GenhazeInstance::derive(&game, &goal, bound)
                .context("deriving the instance")?;
            let file =
                InstanceFile::new(&instance, game.actions1().to_vec(), game.actions2().to_vec());
            if let Some(path) = out {
                write_canonical(&path, &file)?;
            }
            let report = DeriveReport { instance: file };
            emit(format, &report.instance, || report.render());
            Ok(Outcome::Success)
        }
        Command::Solve { instance, game, goal, out } => {
            let file: InstanceFile = read_json(&instance)?;
            let instance = file.to_instance()?;
            let result = solve_dp(&instance).context("running the grid solver")?;
            let loaded = match (game, goal) {
                (Some(game), Some(goal)) => {
                    let game = load_game(&game)?;
                    let goal = load_goal(&goal, &game)?;
                    Some((game, goal))
                }
                _ => None,
            };
            let plan = match (&loaded, result.solution()) {
                (Some((game, goal)), Some(_)) => Some(
                    assemble_and_verify(game, goal, &result)
                        .context("assembling the plan from the solver result")?,
                ),
                _ => None,
            };
            let report = SolveReport::build(&result, &file.actions1, &file.actions2, plan.as_ref());
            if let Some(path) = out {
                match &plan {
                    Some(plan) => write_canonical(&path, &PlanFile::from_plan(plan))?,
                    None => bail!("--out needs a solution to write; the solver found none"),
                }
            }
            emit(format, &report, || report.render());
            Ok(match result.status {
                SolveStatus::Optimal(_) => Outcome::Success,
                SolveStatus::NoSolutionWithinBound => Outcome::Negative,
            })
        }
        Command::Check(args) => run_check(format, args),
        Command::Oracle { instance, max_len, budget, cross_check: with_solver } => {
            let file: InstanceFile = read_json(&instance)?;
            let instance = file.to_instance()?;
            let (result, cross) = if with_solver {
                let cc = cross_check(&instance, max_len).context("running the cross-check")?;
                (cc.oracle.clone(), Some(cc))
            } else {
                let budget = budget.unwrap_or(DEFAULT_NODE_BUDGET);
                let result = brute_min_hazing_with_budget(&instance, max_len, budget)
                    .context("running the exhaustive search")?;
                (result, None)
            };
            let report =
                OracleReport::build(&result, max_len, &file.actions1, &file.actions2, cross.as_ref());
            emit(format, &report, || report.render());
            let mismatch = cross.as_ref().is_some_and(|c| c.matched == Some(false));
            Ok(match result.status {
                _ if mismatch => Outcome::Negative,
                OracleStatus::Optimal(_) => Outcome::Success,
                OracleStatus::NoneWithinDepth => Outcome::Negative,
            })
        }
        Command::Reduce { ussp, out } => {
            let file: UsspFile = read_json(&ussp)?;
            let ussp = file.to_ussp()?;
            let reduced = ussp_to_game(&ussp);
            let instance = GenhazeInstance::derive(&reduced.game, &reduced.goal, Some(reduced.budget))
                .context("deriving the reduced instance")?;
            let report = ReduceReport {
                game: GameFile::from_game(&reduced.game),
                goal: GoalFile::from_goal(&reduced.goal),
                instance: InstanceFile::new(
                    &instance,
                    reduced.game.actions1().to_vec(),
                    reduced.game.actions2().to_vec(),
                ),
                budget: reduced.budget.to_string(),
            };
            if let Some(prefix) = out {
                write_reduction(&prefix, &report)?;
            }
            emit(format, &report, || report.render());
            Ok(Outcome::Success)
        }
    }
}

fn run_check(format: Format, args: CheckArgs) -> Result<Outcome> {
    let game = load_game(&args.game)?;
    let plan = read_json::<PlanFile>(&args.plan)?.into_plan()?;
    plan.validate(&game).context("validating the plan against the game")?;

    let report = if args.limit {
        if args.variant == VariantArg::Reassign {
            bail!("the patient-limit rule covers fixed seats only; use --beta with --variant reassign");
        }
        let verdict = check_limit(&game, &plan)?;
        CheckReport::limit(&game, &verdict)
    } else {
        let beta = parse_beta(args.beta.as_deref().expect("required by the mode group"))?;
        let finite = check_finite_report(&game, &plan, &beta, args.variant.into())?;
        CheckReport::finite(&game, &plan, &beta, args.variant.into(), &finite)
    };
    emit(format, &report, || report.render());
    Ok(if report.status == report::status_name(Status::Unstable) {
        Outcome::Negative
    } else {
        Outcome::Success
    })
}

fn load_game(path: &Path) -> Result<Game> {
    read_json::<GameFile>(path)?.into_game()
}

fn load_goal(path: &Path, game: &Game) -> Result<GoalSequence> {
    let goal = read_json::<GoalFile>(path)?.into_goal()?;
    goal.validate(game).context("validating the goal against the game")?;
    Ok(goal)
}

/// Accepts only an exact fraction `P/Q` strictly between 0 and 1.
fn parse_beta(text: &str) -> Result<BigRational> {
    let (num, den) = text
        .split_once('/')
        .ok_or_else(|| anyhow::anyhow!("discount factor must be an exact fraction P/Q, got {text:?}"))?;
    let parse = |part: &str| {
        BigInt::from_str(part.trim())
            .map_err(|e| anyhow::anyhow!("invalid discount factor {text:?}: {e}"))
    };
    let num = parse(num)?;
    let den = parse(den)?;
    if den.is_zero() {
        bail!("invalid discount factor {text:?}: denominator is zero");
    }
    let beta = BigRational::new(num, den);
    if !(beta > BigRational::zero() && beta < BigRational::one()) {
        bail!("discount factor must lie strictly between 0 and 1, got {beta}");
    }
    Ok(beta)
}

fn emit<T: Serialize>(format: Format, value: &T, human: impl FnOnce() -> String) {
    match format {
        Format::Json => print!("{}", to_canonical_json(value)),
        Format::Human => print!("{}", human()),
    }
}

fn write_reduction(prefix: &Path, report: &ReduceReport) -> Result<()> {
    let base = prefix
        .to_str()
        .ok_or_else(|| anyhow::anyhow!("--out prefix must be valid UTF-8"))?;
    write_canonical(Path::new(&format!("{base}.game.json")), &report.game)?;
    write_canonical(Path::new(&format!("{base}.goal.json")), &report.goal)?;
    write_canonical(Path::new(&format!("{base}.instance.json")), &report.instance)?;
    Ok(())
}
