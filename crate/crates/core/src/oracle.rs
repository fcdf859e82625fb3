//! Brute-force reference search used to cross-check the grid solver.
//!
//! [`brute_min_hazing`] enumerates candidate prefixes depth-first up to a
//! caller-chosen length and keeps the cheapest one satisfying every
//! constraint the solver is supposed to honour: thresholds strictly cleared
//! along the way, budget respected, endpoint strictly above both goal
//! thresholds. On welfare-maximal instances the running total never
//! decreases, which allows sound pruning against the incumbent and against
//! the smallest total any endpoint can have; without that flag the search
//! is fully exhaustive. Work is metered by a node budget so runaway
//! instances fail loudly instead of hanging.

use alloc::vec::Vec;
use core::fmt;

use crate::game::ActionPair;
use crate::genhaze::GenhazeInstance;
use crate::rational::ScaledRational;
use crate::solver::{solve_dp, SolveError, SolveResult, SolveStatus};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The search visited more nodes than the configured budget.
    BudgetExceeded { nodes_visited: u64 },
    Solve(SolveError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded { nodes_visited } => {
                write!(f, "oracle node budget exceeded after {nodes_visited} nodes")
            }
            OracleError::Solve(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<SolveError> for OracleError {
    fn from(e: SolveError) -> Self {
        OracleError::Solve(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSolution {
    pub prefix: Vec<ActionPair>,
    pub totals: (ScaledRational, ScaledRational),
    pub total_sum: ScaledRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleStatus {
    Optimal(OracleSolution),
    /// No qualifying prefix of length at most `max_len` exists.
    NoneWithinDepth,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub status: OracleStatus,
    pub nodes_visited: u64,
}

impl OracleResult {
    pub fn solution(&self) -> Option<&OracleSolution> {
        match &self.status {
            OracleStatus::Optimal(s) => Some(s),
            OracleStatus::NoneWithinDepth => None,
        }
    }
}

struct Search<'a> {
    moves: Vec<(ActionPair, (i64, i64), (i64, i64))>,
    w: i128,
    th: (i64, i64),
    max_sw: bool,
    max_len: usize,
    node_budget: u64,
    nodes_visited: u64,
    /// Smallest scaled total any endpoint can have: both coordinates must
    /// strictly clear their threshold and can never be negative.
    endpoint_floor: i64,
    best: Option<(i64, i64, Vec<ActionPair>)>,
    path: Vec<ActionPair>,
    path_states: Vec<(i64, i64)>,
    instance: &'a GenhazeInstance,
}

impl Search<'_> {
    fn run(&mut self, g: (i64, i64)) -> Result<(), OracleError> {
        self.nodes_visited += 1;
        if self.nodes_visited > self.node_budget {
            return Err(OracleError::BudgetExceeded { nodes_visited: self.nodes_visited });
        }
        let sum = g.0 + g.1;
        if self.max_sw {
            // Totals only grow from here; no strict improvement possible.
            if let Some((b1, b2, _)) = &self.best {
                if b1 + b2 <= sum.max(self.endpoint_floor) {
                    return Ok(());
                }
            }
        }
        if g.0 > self.th.0 && g.1 > self.th.1 {
            let better = self
                .best
                .as_ref()
                .map_or(true, |(b1, b2, _)| sum < b1 + b2);
            if better {
                self.best = Some((g.0, g.1, self.path.clone()));
            }
            if self.max_sw {
                // Extensions only add hazing; mirror the solver and stop.
                return Ok(());
            }
        }
        if self.path.len() == self.max_len {
            return Ok(());
        }
        for i in 0..self.moves.len() {
            let (pair, (h1, h2), (t1, t2)) = self.moves[i];
            if g.0 <= t1 || g.1 <= t2 {
                continue;
            }
            let (n1, n2) = (g.0 as i128 + h1 as i128, g.1 as i128 + h2 as i128);
            if n1 < 0 || n2 < 0 || n1 + n2 > self.w {
                continue;
            }
            let next = (n1 as i64, n2 as i64);
            if self.max_sw && self.path_states.contains(&next) {
                // A cheapest prefix never needs to revisit a state.
                continue;
            }
            self.path.push(pair);
            self.path_states.push(next);
            self.run(next)?;
            self.path.pop();
            self.path_states.pop();
        }
        Ok(())
    }
}

/// Exhaustive minimum-hazing search over prefixes of length at most
/// `max_len`, with the default node budget.
pub fn brute_min_hazing(instance: &GenhazeInstance, max_len: usize) -> Result<OracleResult, OracleError> {
    brute_min_hazing_with_budget(instance, max_len, DEFAULT_NODE_BUDGET)
}

/// Exhaustive search with an explicit node budget. Deterministic: moves are
/// tried in row-major pair order and equal-total candidates keep the first
/// one found.
pub fn brute_min_hazing_with_budget(
    instance: &GenhazeInstance,
    max_len: usize,
    node_budget: u64,
) -> Result<OracleResult, OracleError> {
    let (th1, th2) = instance.theta_scaled();
    let mut search = Search {
        moves: instance
            .pairs()
            .map(|p| {
                let (h, t) = instance.cost_scaled(p);
                (p, h, t)
            })
            .collect(),
        w: instance.bound_scaled() as i128,
        th: (th1, th2),
        max_sw: instance.max_sw(),
        max_len,
        node_budget,
        nodes_visited: 0,
        endpoint_floor: (th1 + 1).max(0) + (th2 + 1).max(0),
        best: None,
        path: Vec::new(),
        path_states: Vec::new(),
        instance,
    };
    if instance.bound_scaled() >= 0 {
        search.run((0, 0))?;
    }
    let nodes_visited = search.nodes_visited;
    let status = match search.best.take() {
        None => OracleStatus::NoneWithinDepth,
        Some((g1, g2, prefix)) => {
            assert!(
                replays_cleanly(search.instance, &prefix, (g1, g2)),
                "oracle returned a prefix violating its own constraints"
            );
            let scale = search.instance.scale();
            let totals = (ScaledRational::new(g1, scale), ScaledRational::new(g2, scale));
            OracleStatus::Optimal(OracleSolution {
                prefix,
                totals,
                total_sum: totals.0 + totals.1,
            })
        }
    };
    Ok(OracleResult { status, nodes_visited })
}

/// Independent re-validation of a candidate prefix: applicability at every
/// step, budget along the way, and a qualifying endpoint.
fn replays_cleanly(instance: &GenhazeInstance, prefix: &[ActionPair], endpoint: (i64, i64)) -> bool {
    let w = instance.bound_scaled();
    let (th1, th2) = instance.theta_scaled();
    let mut g = (0i64, 0i64);
    for &step in prefix {
        if !instance.contains(step) {
            return false;
        }
        let ((h1, h2), (t1, t2)) = instance.cost_scaled(step);
        if g.0 <= t1 || g.1 <= t2 {
            return false;
        }
        g = (g.0 + h1, g.1 + h2);
        if g.0 < 0 || g.1 < 0 || g.0 + g.1 > w {
            return false;
        }
    }
    g == endpoint && g.0 > th1 && g.1 > th2
}

/// Result of running solver and oracle on the same instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub solver: SolveResult,
    pub oracle: OracleResult,
    /// `Some(true)` when the two agree on solvability and optimal total,
    /// `Some(false)` on a genuine disagreement, `None` when `max_len` was
    /// too small for the oracle to certify anything.
    pub matched: Option<bool>,
}

/// Runs both searches and compares them. The oracle's verdict is only
/// conclusive when `max_len` covers the solver's optimal prefix length.
pub fn cross_check(instance: &GenhazeInstance, max_len: usize) -> Result<CrossCheck, OracleError> {
    let solver = solve_dp(instance)?;
    let oracle = brute_min_hazing(instance, max_len)?;
    let matched = match (&solver.status, &oracle.status) {
        (SolveStatus::Optimal(s), OracleStatus::Optimal(o)) => Some(s.total_sum == o.total_sum),
        (SolveStatus::Optimal(s), OracleStatus::NoneWithinDepth) => {
            if s.prefix.len() <= max_len {
                Some(false)
            } else {
                None
            }
        }
        (SolveStatus::NoSolutionWithinBound, OracleStatus::Optimal(_)) => Some(false),
        (SolveStatus::NoSolutionWithinBound, OracleStatus::NoneWithinDepth) => Some(true),
    };
    Ok(CrossCheck { solver, oracle, matched })
}
