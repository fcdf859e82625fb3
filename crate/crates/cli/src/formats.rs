//! JSON file formats for games, goals, plans, instances, and subset-sum
//! questions, plus the conversions into core types.
//!
//! Emission is canonical: fixed field order, two-space pretty printing, one
//! trailing newline. Re-parsing an emitted file always reproduces the same
//! in-memory value, and re-emitting produces identical bytes.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use rematch_core::genhaze::PairCost;
use rematch_core::reduction::UsspInstance;
use rematch_core::stability::SequencePlan;
use rematch_core::{ActionPair, Game, GenhazeInstance, GoalSequence, ScaledRational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameFile {
    pub actions1: Vec<String>,
    pub actions2: Vec<String>,
    pub payoff1: Vec<Vec<i64>>,
    pub payoff2: Vec<Vec<i64>>,
}

impl GameFile {
    pub fn from_game(game: &Game) -> Self {
        let rows = |which: rematch_core::Player| {
            (0..game.n1())
                .map(|r| (0..game.n2()).map(|c| game.payoff(which, ActionPair::new(r, c))).collect())
                .collect()
        };
        GameFile {
            actions1: game.actions1().to_vec(),
            actions2: game.actions2().to_vec(),
            payoff1: rows(rematch_core::Player::One),
            payoff2: rows(rematch_core::Player::Two),
        }
    }

    pub fn into_game(self) -> Result<Game> {
        Game::from_rows(self.actions1, self.actions2, self.payoff1, self.payoff2)
            .map_err(|e| anyhow::anyhow!("invalid game: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalFile {
    /// Action pairs as `[row, col]` index pairs, cycled forever.
    pub goal: Vec<[usize; 2]>,
}

impl GoalFile {
    pub fn from_goal(goal: &GoalSequence) -> Self {
        GoalFile { goal: goal.pairs().iter().map(|p| [p.row, p.col]).collect() }
    }

    pub fn into_goal(self) -> Result<GoalSequence> {
        GoalSequence::new(self.goal.into_iter().map(|[r, c]| ActionPair::new(r, c)).collect())
            .map_err(|e| anyhow::anyhow!("invalid goal: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunDto {
    pub pair: [usize; 2],
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanFile {
    /// Run-length-encoded prefix.
    pub prefix: Vec<RunDto>,
    pub goal: Vec<[usize; 2]>,
}

impl PlanFile {
    pub fn from_plan(plan: &SequencePlan) -> Self {
        PlanFile {
            prefix: plan
                .prefix()
                .iter()
                .map(|&(p, count)| RunDto { pair: [p.row, p.col], count })
                .collect(),
            goal: plan.goal().pairs().iter().map(|p| [p.row, p.col]).collect(),
        }
    }

    pub fn into_plan(self) -> Result<SequencePlan> {
        let goal = GoalFile { goal: self.goal }.into_goal()?;
        let prefix = self
            .prefix
            .into_iter()
            .map(|run| (ActionPair::new(run.pair[0], run.pair[1]), run.count))
            .collect();
        SequencePlan::new(prefix, goal).map_err(|e| anyhow::anyhow!("invalid plan: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostDto {
    pub pair: [usize; 2],
    /// Hazing numerators `[h1, h2]` at the instance scale.
    pub h: [i64; 2],
    /// Threshold numerators `[t1, t2]` at the instance scale.
    pub t: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub actions1: Vec<String>,
    pub actions2: Vec<String>,
    /// Common denominator of every rational in the file.
    pub scale: i64,
    /// Goal threshold numerators `[theta1, theta2]` at `scale`.
    pub theta: [i64; 2],
    /// Budget numerator at `scale`.
    pub bound: i64,
    pub max_sw: bool,
    pub costs: Vec<CostDto>,
}

impl InstanceFile {
    pub fn new(instance: &GenhazeInstance, actions1: Vec<String>, actions2: Vec<String>) -> Self {
        let (th1, th2) = instance.theta_scaled();
        InstanceFile {
            actions1,
            actions2,
            scale: instance.scale(),
            theta: [th1, th2],
            bound: instance.bound_scaled(),
            max_sw: instance.max_sw(),
            costs: instance
                .pairs()
                .map(|p| {
                    let ((h1, h2), (t1, t2)) = instance.cost_scaled(p);
                    CostDto { pair: [p.row, p.col], h: [h1, h2], t: [t1, t2] }
                })
                .collect(),
        }
    }

    pub fn to_instance(&self) -> Result<GenhazeInstance> {
        let (n1, n2) = (self.actions1.len(), self.actions2.len());
        if self.scale < 1 {
            bail!("invalid instance: scale must be positive");
        }
        if self.costs.len() != n1 * n2 {
            bail!("invalid instance: expected {} cost entries, got {}", n1 * n2, self.costs.len());
        }
        let mut slots: Vec<Option<PairCost>> = vec![None; n1 * n2];
        for dto in &self.costs {
            let [row, col] = dto.pair;
            if row >= n1 || col >= n2 {
                bail!("invalid instance: cost pair ({row}, {col}) out of range");
            }
            let slot = &mut slots[row * n2 + col];
            if slot.is_some() {
                bail!("invalid instance: duplicate cost entry for ({row}, {col})");
            }
            *slot = Some(PairCost {
                h1: ScaledRational::new(dto.h[0], self.scale),
                h2: ScaledRational::new(dto.h[1], self.scale),
                t1: ScaledRational::new(dto.t[0], self.scale),
                t2: ScaledRational::new(dto.t[1], self.scale),
            });
        }
        let costs = slots.into_iter().map(|s| s.expect("complete by count")).collect();
        GenhazeInstance::new(
            n1,
            n2,
            costs,
            self.scale,
            (
                ScaledRational::new(self.theta[0], self.scale),
                ScaledRational::new(self.theta[1], self.scale),
            ),
            ScaledRational::new(self.bound, self.scale),
            self.max_sw,
        )
        .map_err(|e| anyhow::anyhow!("invalid instance: {e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UsspFile {
    pub values: Vec<i64>,
    pub target: i64,
}

impl UsspFile {
    pub fn to_ussp(&self) -> Result<UsspInstance> {
        UsspInstance::new(self.values.clone(), self.target)
            .map_err(|e| anyhow::anyhow!("invalid subset-sum question: {e}"))
    }
}

/// Canonical serialization: keys sorted at every level (via
/// `serde_json::Value`'s ordered map), pretty-printed, newline terminated.
/// Emitting, re-parsing, and emitting again is byte-identical.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("DTOs serialize infallibly");
    let mut text = serde_json::to_string_pretty(&value).expect("values print infallibly");
    text.push('\n');
    text
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_canonical<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_canonical_json(value)).with_context(|| format!("writing {}", path.display()))
}

/// Parses an exact rational `P/Q` (or integer `P`) with positive
/// denominator into a scaled rational.
pub fn parse_scaled(text: &str) -> Result<ScaledRational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: i64 = num.parse().with_context(|| format!("invalid rational {text:?}"))?;
    let den: i64 = den.parse().with_context(|| format!("invalid rational {text:?}"))?;
    if den < 1 {
        bail!("invalid rational {text:?}: denominator must be positive");
    }
    Ok(ScaledRational::new(num, den))
}
