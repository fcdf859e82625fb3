//! Breadth-first dynamic program for cheapest stabilising prefixes.
//!
//! For a welfare-maximal goal every prefix step costs the pair of players a
//! non-negative amount of total hazing, so accumulated hazing pairs
//! `(H1, H2)` walk a finite grid of integer numerators at the instance
//! scale: coordinates stay within `0 <= g_i`, `g1 + g2 <= W` where `W` is
//! the scaled budget. A state is expandable through pair `a` only when both
//! players already sit strictly above `a`'s threshold values (otherwise the
//! step itself invites a deviation), and a state is a valid endpoint once
//! both coordinates strictly clear the goal thresholds. The search
//! enumerates every reachable state once and returns the endpoint
//! minimising `g1 + g2`, reconstructing a prefix via parent pointers.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::game::{ActionPair, Game, GameError, GoalSequence};
use crate::genhaze::GenhazeInstance;
use crate::rational::ScaledRational;
use crate::stability::{check_limit, SequencePlan, StabilityError, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    /// The grid walk is only sound when every pair's joint hazing is
    /// non-negative, i.e. the goal is welfare-maximal.
    NotWelfareMaximal,
    NegativeBound,
    /// Tried to assemble a plan out of a search that found nothing.
    NoSolution,
    Game(GameError),
    /// The assembled plan failed the independent limit-stability check.
    VerificationFailed,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::NotWelfareMaximal => {
                write!(f, "the grid search requires a welfare-maximal goal (max_sw instance)")
            }
            SolveError::NegativeBound => write!(f, "hazing budget must be non-negative"),
            SolveError::NoSolution => write!(f, "no solution to assemble a plan from"),
            SolveError::Game(e) => write!(f, "{e}"),
            SolveError::VerificationFailed => {
                write!(f, "assembled plan failed the limit stability re-check")
            }
        }
    }
}

impl core::error::Error for SolveError {}

impl From<GameError> for SolveError {
    fn from(e: GameError) -> Self {
        SolveError::Game(e)
    }
}

/// A cheapest stabilising prefix found by the grid search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Prefix steps in play order (not run-length encoded).
    pub prefix: Vec<ActionPair>,
    /// Accumulated hazing per player at the end of the prefix.
    pub totals: (ScaledRational, ScaledRational),
    /// `totals.0 + totals.1`, the minimised objective.
    pub total_sum: ScaledRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal(Solution),
    /// Exhausted the grid without hitting a state clearing both thresholds.
    NoSolutionWithinBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Number of distinct grid states enqueued, bounded by `(W + 1)^2`.
    pub states_explored: u64,
}

impl SolveResult {
    pub fn solution(&self) -> Option<&Solution> {
        match &self.status {
            SolveStatus::Optimal(s) => Some(s),
            SolveStatus::NoSolutionWithinBound => None,
        }
    }
}

/// Finds a minimum-total-hazing prefix for `instance`.
///
/// Deterministic: successors are tried in row-major pair order, states are
/// marked visited when first enqueued, endpoint ties keep the first state
/// reached in queue order, and endpoint states are never expanded further
/// (any extension only adds hazing).
pub fn solve_dp(instance: &GenhazeInstance) -> Result<SolveResult, SolveError> {
    if !instance.max_sw() {
        return Err(SolveError::NotWelfareMaximal);
    }
    if instance.bound().is_negative() {
        return Err(SolveError::NegativeBound);
    }
    let w = instance.bound_scaled() as i128;
    let (th1, th2) = instance.theta_scaled();
    let moves: Vec<(ActionPair, (i64, i64), (i64, i64))> = instance
        .pairs()
        .map(|p| {
            let (h, t) = instance.cost_scaled(p);
            (p, h, t)
        })
        .collect();

    type State = (i64, i64);
    let mut parents: BTreeMap<State, Option<(State, ActionPair)>> = BTreeMap::new();
    let mut queue: VecDeque<State> = VecDeque::new();
    parents.insert((0, 0), None);
    queue.push_back((0, 0));
    let mut best: Option<State> = None;

    while let Some(state) = queue.pop_front() {
        let (g1, g2) = state;
        if g1 > th1 && g2 > th2 {
            if best.map_or(true, |(b1, b2)| g1 + g2 < b1 + b2) {
                best = Some(state);
            }
            continue;
        }
        for &(pair, (h1, h2), (t1, t2)) in &moves {
            if g1 <= t1 || g2 <= t2 {
                continue;
            }
            let (n1, n2) = (g1 as i128 + h1 as i128, g2 as i128 + h2 as i128);
            if n1 < 0 || n2 < 0 || n1 + n2 > w {
                continue;
            }
            let next = (n1 as i64, n2 as i64);
            if parents.contains_key(&next) {
                continue;
            }
            parents.insert(next, Some((state, pair)));
            queue.push_back(next);
        }
    }

    let states_explored = parents.len() as u64;
    let status = match best {
        None => SolveStatus::NoSolutionWithinBound,
        Some(endpoint) => {
            let mut prefix = Vec::new();
            let mut cursor = endpoint;
            while let Some(&Some((prev, pair))) = parents.get(&cursor) {
                prefix.push(pair);
                cursor = prev;
            }
            prefix.reverse();
            let scale = instance.scale();
            let totals = (
                ScaledRational::new(endpoint.0, scale),
                ScaledRational::new(endpoint.1, scale),
            );
            SolveStatus::Optimal(Solution {
                prefix,
                totals,
                total_sum: totals.0 + totals.1,
            })
        }
    };
    Ok(SolveResult { status, states_explored })
}

/// Turns a solver result into a run-length-encoded plan for `(game, goal)`
/// and re-checks it with the independent limit-stability test.
pub fn assemble_and_verify(
    game: &Game,
    goal: &GoalSequence,
    result: &SolveResult,
) -> Result<SequencePlan, SolveError> {
    let solution = result.solution().ok_or(SolveError::NoSolution)?;
    let plan = SequencePlan::new(run_length_encode(&solution.prefix), goal.clone())
        .expect("encoded runs are non-empty");
    match check_limit(game, &plan) {
        Ok(verdict) if verdict.status == Status::Stable => Ok(plan),
        Ok(_) => Err(SolveError::VerificationFailed),
        Err(StabilityError::Game(e)) => Err(SolveError::Game(e)),
        Err(_) => Err(SolveError::VerificationFailed),
    }
}

fn run_length_encode(pairs: &[ActionPair]) -> Vec<(ActionPair, u32)> {
    let mut runs: Vec<(ActionPair, u32)> = Vec::new();
    for &pair in pairs {
        match runs.last_mut() {
            Some((last, count)) if *last == pair => *count += 1,
            _ => runs.push((pair, 1)),
        }
    }
    runs
}
