//! Output shapes for each subcommand: one serializable report per verb,
//! printed as canonical JSON under `--format json` and rendered as plain
//! text otherwise. Rationals are emitted as reduced `p/q` strings (bare
//! integers when the denominator is one) so output stays exact.

use std::fmt::Write as _;

use serde::Serialize;

use rematch_core::existence::{Feasibility, FeasibilityVerdict};
use rematch_core::oracle::{CrossCheck, OracleResult, OracleStatus};
use rematch_core::solver::{SolveResult, SolveStatus};
use rematch_core::stability::{DeviationCheck, FiniteReport, SequencePlan};
use rematch_core::{Game, Status, Variant, Witness};

use crate::formats::{GoalFile, InstanceFile, PlanFile};

#[derive(Clone, Debug, Serialize)]
pub struct PairInfo {
    pub pair: [usize; 2],
    pub label: String,
}

impl PairInfo {
    pub fn new(pair: rematch_core::ActionPair, actions1: &[String], actions2: &[String]) -> Self {
        PairInfo {
            pair: [pair.row, pair.col],
            label: format!("({}, {})", actions1[pair.row], actions2[pair.col]),
        }
    }

    pub fn in_game(pair: rematch_core::ActionPair, game: &Game) -> Self {
        PairInfo::new(pair, game.actions1(), game.actions2())
    }
}

#[derive(Serialize)]
pub struct DeviationInfo {
    #[serde(flatten)]
    pub at: PairInfo,
    /// Best unilateral deviation payoff for each player.
    pub d: [i64; 2],
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub actions1: Vec<String>,
    pub actions2: Vec<String>,
    pub symmetric: bool,
    pub payoff_spread: i64,
    pub max_welfare: i64,
    pub max_welfare_pairs: Vec<PairInfo>,
    pub pure_nash_pairs: Vec<PairInfo>,
    pub deviation_payoffs: Vec<DeviationInfo>,
}

impl AnalyzeReport {
    pub fn build(game: &Game) -> Self {
        let welfare = |p: rematch_core::ActionPair| {
            let (p1, p2) = game.payoffs(p);
            p1 + p2
        };
        let max_welfare = game.max_welfare_pairs().first().copied().map(welfare).unwrap_or(0);
        AnalyzeReport {
            actions1: game.actions1().to_vec(),
            actions2: game.actions2().to_vec(),
            symmetric: game.is_symmetric(),
            payoff_spread: game.payoff_spread(),
            max_welfare,
            max_welfare_pairs: game
                .max_welfare_pairs()
                .into_iter()
                .map(|p| PairInfo::in_game(p, game))
                .collect(),
            pure_nash_pairs: game
                .pure_nash_pairs()
                .into_iter()
                .map(|p| PairInfo::in_game(p, game))
                .collect(),
            deviation_payoffs: game
                .pairs()
                .map(|p| {
                    let (d1, d2) = game.deviation_payoffs(p).expect("own pairs are in range");
                    DeviationInfo { at: PairInfo::in_game(p, game), d: [d1, d2] }
                })
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "game: {}x{}{}",
            self.actions1.len(),
            self.actions2.len(),
            if self.symmetric { " (symmetric)" } else { "" }
        );
        let _ = writeln!(out, "actions (player 1): {}", self.actions1.join(", "));
        let _ = writeln!(out, "actions (player 2): {}", self.actions2.join(", "));
        let _ = writeln!(out, "payoff spread: {}", self.payoff_spread);
        let _ = writeln!(
            out,
            "max welfare: {} at {}",
            self.max_welfare,
            join_labels(&self.max_welfare_pairs)
        );
        let _ = writeln!(
            out,
            "pure Nash pairs: {}",
            if self.pure_nash_pairs.is_empty() {
                "none".to_string()
            } else {
                join_labels(&self.pure_nash_pairs)
            }
        );
        let _ = writeln!(out, "deviation payoffs:");
        for dev in &self.deviation_payoffs {
            let _ = writeln!(out, "  {}: d1={} d2={}", dev.at.label, dev.d[0], dev.d[1]);
        }
        out
    }
}

#[derive(Serialize)]
pub struct SlackInfo {
    #[serde(flatten)]
    pub at: PairInfo,
    /// `goal value - deviation payoff` per player, as exact rationals.
    pub slack: [String; 2],
}

#[derive(Serialize)]
pub struct FeasibleReport {
    pub status: &'static str,
    pub goal_value: [String; 2],
    pub witness_pair: Option<PairInfo>,
    pub slacks: Vec<SlackInfo>,
    /// Constructive stabilizing plan, when requested and feasible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_plan: Option<PlanFile>,
}

impl FeasibleReport {
    pub fn build(
        game: &Game,
        value: (rematch_core::ScaledRational, rematch_core::ScaledRational),
        verdict: &FeasibilityVerdict,
    ) -> Self {
        let status = match verdict.status {
            Feasibility::Feasible { .. } => "feasible",
            Feasibility::Infeasible => "infeasible",
            Feasibility::Unknown => "unknown",
        };
        let witness_pair = match verdict.status {
            Feasibility::Feasible { pair } => Some(PairInfo::in_game(pair, game)),
            _ => None,
        };
        FeasibleReport {
            status,
            goal_value: [value.0.to_string(), value.1.to_string()],
            witness_pair,
            witness_plan: None,
            slacks: verdict
                .slacks
                .iter()
                .map(|s| SlackInfo {
                    at: PairInfo::in_game(s.pair, game),
                    slack: [s.slack1.to_string(), s.slack2.to_string()],
                })
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "goal value: ({}, {})", self.goal_value[0], self.goal_value[1]);
        match (&self.status, &self.witness_pair) {
            (&"feasible", Some(w)) => {
                let _ = writeln!(out, "verdict: feasible — haze at {}", w.label);
            }
            (&"infeasible", _) => {
                let _ = writeln!(out, "verdict: infeasible — every pair leaves some player better off leaving");
            }
            _ => {
                let _ = writeln!(out, "verdict: unknown — slack ties leave the question open");
            }
        }
        let _ = writeln!(out, "slacks (goal value - deviation payoff):");
        for s in &self.slacks {
            let _ = writeln!(out, "  {}: ({}, {})", s.at.label, s.slack[0], s.slack[1]);
        }
        if let Some(plan) = &self.witness_plan {
            let runs: Vec<String> = plan
                .prefix
                .iter()
                .map(|r| format!("[{}, {}] x {}", r.pair[0], r.pair[1], r.count))
                .collect();
            let _ = writeln!(out, "witness plan prefix: {}", runs.join(", "));
        }
        out
    }
}

#[derive(Serialize)]
pub struct WitnessInfo {
    pub step: usize,
    pub player: u8,
    pub deviation: usize,
    pub deviation_label: String,
    pub margin: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation_average: Option<String>,
}

impl WitnessInfo {
    pub fn build(witness: &Witness, game: &Game) -> Self {
        let labels = match witness.player {
            rematch_core::Player::One => game.actions1(),
            rematch_core::Player::Two => game.actions2(),
        };
        WitnessInfo {
            step: witness.step,
            player: witness.player.index(),
            deviation: witness.deviation,
            deviation_label: labels[witness.deviation].clone(),
            margin: witness.margin.to_string(),
            deviation_average: witness.deviation_average.as_ref().map(|a| a.to_string()),
        }
    }

    pub fn render(&self) -> String {
        let mut line = format!(
            "step {}, player {}, best deviation {}, margin {}",
            self.step, self.player, self.deviation_label, self.margin
        );
        if let Some(avg) = &self.deviation_average {
            let _ = write!(line, ", per-round average through deviation {avg}");
        }
        line
    }
}

#[derive(Serialize)]
pub struct CheckInfo {
    pub step: usize,
    pub player: u8,
    #[serde(flatten)]
    pub at: PairInfo,
    pub deviation_label: String,
    pub margin: String,
    pub deviation_average: String,
}

impl CheckInfo {
    fn build(check: &DeviationCheck, plan: &SequencePlan, game: &Game) -> Self {
        let pair = plan.step(check.step);
        let labels = match check.player {
            rematch_core::Player::One => game.actions1(),
            rematch_core::Player::Two => game.actions2(),
        };
        CheckInfo {
            step: check.step,
            player: check.player.index(),
            at: PairInfo::in_game(pair, game),
            deviation_label: labels[check.deviation].clone(),
            margin: check.margin.to_string(),
            deviation_average: check.deviation_average.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    /// `"finite"` or `"limit"`.
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<&'static str>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckInfo>>,
}

pub fn status_name(status: Status) -> &'static str {
    match status {
        Status::Stable => "stable",
        Status::Unstable => "unstable",
        Status::Boundary => "boundary",
    }
}

impl CheckReport {
    pub fn finite(
        game: &Game,
        plan: &SequencePlan,
        beta: &rematch_core::BigRational,
        variant: Variant,
        report: &FiniteReport,
    ) -> Self {
        CheckReport {
            mode: "finite",
            beta: Some(beta.to_string()),
            variant: Some(match variant {
                Variant::FixedRole => "fixed",
                Variant::RandomReassignment => "reassign",
            }),
            status: status_name(report.verdict.status),
            witness: report.verdict.witness.as_ref().map(|w| WitnessInfo::build(w, game)),
            checks: Some(report.checks.iter().map(|c| CheckInfo::build(c, plan, game)).collect()),
        }
    }

    pub fn limit(game: &Game, verdict: &rematch_core::StabilityVerdict) -> Self {
        CheckReport {
            mode: "limit",
            beta: None,
            variant: None,
            status: status_name(verdict.status),
            witness: verdict.witness.as_ref().map(|w| WitnessInfo::build(w, game)),
            checks: None,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        match (&self.beta, &self.variant) {
            (Some(beta), Some(variant)) => {
                let _ = writeln!(out, "mode: finite (beta = {beta}, variant = {variant})");
            }
            _ => {
                let _ = writeln!(out, "mode: patient limit");
            }
        }
        let _ = writeln!(out, "verdict: {}", self.status.to_uppercase());
        if let Some(w) = &self.witness {
            let kind = if self.status == "boundary" { "first tie" } else { "witness" };
            let _ = writeln!(out, "{kind}: {}", w.render());
        }
        if let Some(checks) = &self.checks {
            let _ = writeln!(out, "checks ({} inequalities):", checks.len());
            for c in checks {
                let _ = writeln!(
                    out,
                    "  step {:>2} {} player {}: deviate to {:<4} margin {:>12}  avg-if-deviating {}",
                    c.step, c.at.label, c.player, c.deviation_label, c.margin, c.deviation_average
                );
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct DeriveReport {
    pub instance: InstanceFile,
}

impl DeriveReport {
    pub fn render(&self) -> String {
        let inst = &self.instance;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "instance: {}x{} pairs, scale {}, max-welfare goal: {}",
            inst.actions1.len(),
            inst.actions2.len(),
            inst.scale,
            if inst.max_sw { "yes" } else { "no" }
        );
        let _ = writeln!(
            out,
            "thresholds: theta1 = {}, theta2 = {}",
            fraction(inst.theta[0], inst.scale),
            fraction(inst.theta[1], inst.scale)
        );
        let _ = writeln!(out, "budget: {}", fraction(inst.bound, inst.scale));
        let _ = writeln!(out, "per-pair hazing h and threshold t (players 1, 2):");
        for cost in &inst.costs {
            let label = format!(
                "({}, {})",
                inst.actions1[cost.pair[0]], inst.actions2[cost.pair[1]]
            );
            let _ = writeln!(
                out,
                "  {label}: h = ({}, {}), t = ({}, {})",
                fraction(cost.h[0], inst.scale),
                fraction(cost.h[1], inst.scale),
                fraction(cost.t[0], inst.scale),
                fraction(cost.t[1], inst.scale)
            );
        }
        out
    }
}

#[derive(Serialize)]
pub struct SolveReport {
    pub status: &'static str,
    pub states_explored: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub totals: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_sum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefix: Option<Vec<PairInfo>>,
    /// Present when a game and goal were supplied: the assembled plan, after
    /// it passed the independent limit-stability re-check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_limit_stable: Option<bool>,
}

impl SolveReport {
    pub fn build(
        result: &SolveResult,
        actions1: &[String],
        actions2: &[String],
        plan: Option<&SequencePlan>,
    ) -> Self {
        match &result.status {
            SolveStatus::Optimal(s) => SolveReport {
                status: "optimal",
                states_explored: result.states_explored,
                totals: Some([s.totals.0.to_string(), s.totals.1.to_string()]),
                total_sum: Some(s.total_sum.to_string()),
                prefix: Some(
                    s.prefix.iter().map(|&p| PairInfo::new(p, actions1, actions2)).collect(),
                ),
                plan: plan.map(PlanFile::from_plan),
                verified_limit_stable: plan.map(|_| true),
            },
            SolveStatus::NoSolutionWithinBound => SolveReport {
                status: "no_solution_within_bound",
                states_explored: result.states_explored,
                totals: None,
                total_sum: None,
                prefix: None,
                plan: None,
                verified_limit_stable: None,
            },
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.status {
            "optimal" => {
                let totals = self.totals.as_ref().expect("optimal carries totals");
                let _ = writeln!(out, "status: optimal");
                let _ = writeln!(
                    out,
                    "minimum total hazing: {} (player 1: {}, player 2: {})",
                    self.total_sum.as_deref().unwrap_or("?"),
                    totals[0],
                    totals[1]
                );
                let prefix = self.prefix.as_ref().expect("optimal carries a prefix");
                let _ = writeln!(
                    out,
                    "prefix ({} rounds): {}",
                    prefix.len(),
                    if prefix.is_empty() { "empty".to_string() } else { join_labels(prefix) }
                );
            }
            _ => {
                let _ = writeln!(out, "status: no solution within the hazing budget");
            }
        }
        let _ = writeln!(out, "states explored: {}", self.states_explored);
        if let Some(verified) = self.verified_limit_stable {
            let _ = writeln!(
                out,
                "assembled plan re-checked limit-stable: {}",
                if verified { "yes" } else { "no" }
            );
        }
        out
    }
}

#[derive(Serialize)]
pub struct CrossInfo {
    pub solver_status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver_total_sum: Option<String>,
    pub states_explored: u64,
    /// `true`/`false` for agree/disagree, absent when the depth cap kept the
    /// oracle from certifying anything.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched: Option<bool>,
}

#[derive(Serialize)]
pub struct OracleReport {
    pub status: &'static str,
    pub nodes_visited: u64,
    pub max_len: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub totals: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_sum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefix: Option<Vec<PairInfo>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossInfo>,
}

impl OracleReport {
    pub fn build(
        result: &OracleResult,
        max_len: usize,
        actions1: &[String],
        actions2: &[String],
        cross: Option<&CrossCheck>,
    ) -> Self {
        let (status, totals, total_sum, prefix) = match &result.status {
            OracleStatus::Optimal(s) => (
                "optimal",
                Some([s.totals.0.to_string(), s.totals.1.to_string()]),
                Some(s.total_sum.to_string()),
                Some(s.prefix.iter().map(|&p| PairInfo::new(p, actions1, actions2)).collect()),
            ),
            OracleStatus::NoneWithinDepth => ("none_within_depth", None, None, None),
        };
        OracleReport {
            status,
            nodes_visited: result.nodes_visited,
            max_len,
            totals,
            total_sum,
            prefix,
            cross_check: cross.map(|c| CrossInfo {
                solver_status: match c.solver.status {
                    SolveStatus::Optimal(_) => "optimal",
                    SolveStatus::NoSolutionWithinBound => "no_solution_within_bound",
                },
                solver_total_sum: c.solver.solution().map(|s| s.total_sum.to_string()),
                states_explored: c.solver.states_explored,
                matched: c.matched,
            }),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.status {
            "optimal" => {
                let totals = self.totals.as_ref().expect("optimal carries totals");
                let prefix = self.prefix.as_ref().expect("optimal carries a prefix");
                let _ = writeln!(out, "status: optimal within depth {}", self.max_len);
                let _ = writeln!(
                    out,
                    "minimum total hazing: {} (player 1: {}, player 2: {})",
                    self.total_sum.as_deref().unwrap_or("?"),
                    totals[0],
                    totals[1]
                );
                let _ = writeln!(
                    out,
                    "prefix ({} rounds): {}",
                    prefix.len(),
                    if prefix.is_empty() { "empty".to_string() } else { join_labels(prefix) }
                );
            }
            _ => {
                let _ = writeln!(out, "status: no qualifying prefix of length <= {}", self.max_len);
            }
        }
        let _ = writeln!(out, "nodes visited: {}", self.nodes_visited);
        if let Some(cross) = &self.cross_check {
            let _ = writeln!(
                out,
                "grid solver: {}{} ({} states)",
                cross.solver_status,
                cross
                    .solver_total_sum
                    .as_ref()
                    .map(|t| format!(", total {t}"))
                    .unwrap_or_default(),
                cross.states_explored
            );
            let _ = writeln!(
                out,
                "cross-check: {}",
                match cross.matched {
                    Some(true) => "MATCH",
                    Some(false) => "MISMATCH",
                    None => "inconclusive (depth too small to certify)",
                }
            );
        }
        out
    }
}

#[derive(Serialize)]
pub struct ReduceReport {
    pub game: crate::formats::GameFile,
    pub goal: GoalFile,
    pub instance: InstanceFile,
    pub budget: String,
}

impl ReduceReport {
    pub fn render(&self) -> String {
        let n = self.game.actions1.len();
        let mut out = String::new();
        let _ = writeln!(out, "reduced game: {n}x{n} actions ({} values encoded)", n - 2);
        let _ = writeln!(
            out,
            "goal: ({}, {}) repeated forever",
            self.game.actions1[0], self.game.actions2[0]
        );
        let _ = writeln!(
            out,
            "thresholds: theta1 = {}, theta2 = {}",
            fraction(self.instance.theta[0], self.instance.scale),
            fraction(self.instance.theta[1], self.instance.scale)
        );
        let _ = writeln!(out, "hazing budget: {}", self.budget);
        let _ = writeln!(
            out,
            "the question is solvable iff the minimum hazing total is exactly {}",
            self.budget
        );
        out
    }
}

fn join_labels(pairs: &[PairInfo]) -> String {
    pairs.iter().map(|p| p.label.as_str()).collect::<Vec<_>>().join(", ")
}

/// Renders `num / scale` reduced, e.g. `fraction(34, 2)` is `"17"`.
pub fn fraction(num: i64, scale: i64) -> String {
    rematch_core::ScaledRational::new(num, scale).to_string()
}
