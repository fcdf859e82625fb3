//! Encoding unbounded subset sum as a minimum-hazing problem.
//!
//! Given positive values `b_1..b_n` and a target `B`, the reduced game has
//! a cooperation action `a0`, one action per value, and a spoiler action.
//! Cooperating pays `B` each; playing value action `i` together pays
//! `B - b_i` each, i.e. hazes both players by exactly `b_i`; the spoiler row
//! pays `2B - 1` against cooperation so the goal threshold lands at `B - 1`
//! per player; every other cell is poisoned far below anything useful.
//! With budget `2B`, a qualifying prefix must haze each player strictly
//! above `B - 1` while spending at most `2B` in total — possible exactly
//! when some multiset of the values sums to `B`. Deciding solvability of
//! these instances therefore decides unbounded subset sum, which is what
//! makes a pseudo-polynomial solver the best one can expect.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::game::{ActionPair, Game, GoalSequence};
use crate::rational::ScaledRational;

/// Default cap on targets accepted by [`ussp_brute`]; the table it builds
/// is `target + 1` entries long.
pub const BRUTE_TARGET_CAP: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionError {
    EmptyValues,
    /// Values must be strictly positive (zeros would make hazing free and
    /// targets trivially unreachable ones negative).
    NonPositiveValue(i64),
    NonPositiveTarget(i64),
    /// Target beyond the brute-force table cap.
    TargetTooLarge { target: i64, cap: i64 },
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::EmptyValues => write!(f, "need at least one value"),
            ReductionError::NonPositiveValue(v) => write!(f, "values must be positive, got {v}"),
            ReductionError::NonPositiveTarget(t) => write!(f, "target must be positive, got {t}"),
            ReductionError::TargetTooLarge { target, cap } => {
                write!(f, "target {target} exceeds the brute-force cap {cap}")
            }
        }
    }
}

impl core::error::Error for ReductionError {}

/// An unbounded subset sum question: can `target` be written as a sum of
/// the given values, each usable any number of times?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsspInstance {
    values: Vec<i64>,
    target: i64,
}

impl UsspInstance {
    pub fn new(values: Vec<i64>, target: i64) -> Result<Self, ReductionError> {
        if values.is_empty() {
            return Err(ReductionError::EmptyValues);
        }
        if let Some(&v) = values.iter().find(|&&v| v <= 0) {
            return Err(ReductionError::NonPositiveValue(v));
        }
        if target <= 0 {
            return Err(ReductionError::NonPositiveTarget(target));
        }
        Ok(UsspInstance { values, target })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn target(&self) -> i64 {
        self.target
    }
}

/// The game, goal, and hazing budget encoding a subset-sum question.
#[derive(Clone, Debug)]
pub struct ReducedGame {
    pub game: Game,
    pub goal: GoalSequence,
    /// Total hazing budget `2 * target`: `target` per player.
    pub budget: ScaledRational,
}

/// Builds the reduction. The resulting instance is symmetric, its goal is
/// the welfare-maximal pair `(a0, a0)`, and its minimum hazing total is
/// exactly `2 * target` when the subset-sum question is solvable (and the
/// budget is unreachable otherwise).
pub fn ussp_to_game(ussp: &UsspInstance) -> ReducedGame {
    let n = ussp.values.len();
    let b = ussp.target;
    let poison = -(b + ussp.values[0]);

    let mut labels: Vec<String> = Vec::with_capacity(n + 2);
    labels.push("a0".into());
    for i in 1..=n {
        labels.push(format!("a{i}"));
    }
    labels.push(format!("a{}", n + 1));

    let mut rows = Vec::with_capacity(n + 2);
    for row in 0..n + 2 {
        let mut cells = Vec::with_capacity(n + 2);
        for col in 0..n + 2 {
            let payoff = if row == 0 && col == 0 {
                b
            } else if row == col && row <= n {
                b - ussp.values[row - 1]
            } else if row == n + 1 && col == 0 {
                2 * b - 1
            } else {
                poison
            };
            cells.push(payoff);
        }
        rows.push(cells);
    }
    let transposed: Vec<Vec<i64>> = (0..n + 2)
        .map(|row| (0..n + 2).map(|col| rows[col][row]).collect())
        .collect();

    let game = Game::from_rows(labels.clone(), labels, rows, transposed)
        .expect("reduction tables are rectangular");
    let goal = GoalSequence::new([ActionPair::new(0, 0)].into()).expect("single pair");
    ReducedGame {
        game,
        goal,
        budget: ScaledRational::from_int(2 * b),
    }
}

/// Reference decision procedure: pseudo-polynomial reachability over sums
/// `0..=target`.
pub fn ussp_brute(ussp: &UsspInstance) -> Result<bool, ReductionError> {
    if ussp.target > BRUTE_TARGET_CAP {
        return Err(ReductionError::TargetTooLarge { target: ussp.target, cap: BRUTE_TARGET_CAP });
    }
    let target = ussp.target as usize;
    let mut reachable = alloc::vec![false; target + 1];
    reachable[0] = true;
    for sum in 1..=target {
        reachable[sum] = ussp
            .values
            .iter()
            .any(|&v| (v as usize) <= sum && reachable[sum - v as usize]);
    }
    Ok(reachable[target])
}
