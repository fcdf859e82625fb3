//! Finite two-player games in normal form and the base quantities used by
//! the rest of the crate.
//!
//! Payoffs are integers; per-round averages over a goal cycle of length `r`
//! are exact [`ScaledRational`]s with scale `r`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::ScaledRational;

/// One cell of the payoff matrix: row player's action index and column
/// player's action index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionPair {
    pub row: usize,
    pub col: usize,
}

impl ActionPair {
    pub fn new(row: usize, col: usize) -> Self {
        ActionPair { row, col }
    }
}

impl fmt::Display for ActionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    /// 1-based index for display.
    pub fn index(self) -> u8 {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameError {
    /// Payoff matrices must be rectangular and match the action label counts.
    ShapeMismatch,
    /// A game must have at least one action per player.
    Empty,
    /// An action pair referenced an index outside the game's matrices.
    PairOutOfRange(ActionPair),
    /// Goal sequences must contain at least one action pair.
    EmptyGoal,
}

impl fmt::Display for GameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameError::ShapeMismatch => write!(f, "payoff matrices do not match the declared action counts"),
            GameError::Empty => write!(f, "games need at least one action per player"),
            GameError::PairOutOfRange(p) => write!(f, "action pair {p} is out of range"),
            GameError::EmptyGoal => write!(f, "goal sequences must be non-empty"),
        }
    }
}

impl core::error::Error for GameError {}

/// A finite two-player game in normal form with integer payoffs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    actions1: Vec<String>,
    actions2: Vec<String>,
    // Row-major, indexed by row * n2 + col.
    payoff1: Vec<i64>,
    payoff2: Vec<i64>,
}

impl Game {
    /// Builds a game from per-row payoff tables for each player.
    pub fn from_rows(
        actions1: Vec<String>,
        actions2: Vec<String>,
        rows1: Vec<Vec<i64>>,
        rows2: Vec<Vec<i64>>,
    ) -> Result<Self, GameError> {
        let (n1, n2) = (actions1.len(), actions2.len());
        if n1 == 0 || n2 == 0 {
            return Err(GameError::Empty);
        }
        if rows1.len() != n1 || rows2.len() != n1 {
            return Err(GameError::ShapeMismatch);
        }
        let flatten = |rows: Vec<Vec<i64>>| -> Result<Vec<i64>, GameError> {
            let mut flat = Vec::with_capacity(n1 * n2);
            for row in rows {
                if row.len() != n2 {
                    return Err(GameError::ShapeMismatch);
                }
                flat.extend(row);
            }
            Ok(flat)
        };
        Ok(Game {
            actions1,
            actions2,
            payoff1: flatten(rows1)?,
            payoff2: flatten(rows2)?,
        })
    }

    pub fn n1(&self) -> usize {
        self.actions1.len()
    }

    pub fn n2(&self) -> usize {
        self.actions2.len()
    }

    pub fn actions1(&self) -> &[String] {
        &self.actions1
    }

    pub fn actions2(&self) -> &[String] {
        &self.actions2
    }

    /// Label of `player`'s action `index`.
    pub fn action_label(&self, player: Player, index: usize) -> &str {
        match player {
            Player::One => &self.actions1[index],
            Player::Two => &self.actions2[index],
        }
    }

    pub fn contains(&self, pair: ActionPair) -> bool {
        pair.row < self.n1() && pair.col < self.n2()
    }

    pub fn check_pair(&self, pair: ActionPair) -> Result<(), GameError> {
        if self.contains(pair) {
            Ok(())
        } else {
            Err(GameError::PairOutOfRange(pair))
        }
    }

    /// Both players' payoffs at `pair`. Panics if out of range; validate
    /// with [`Game::check_pair`] first when the pair is untrusted.
    pub fn payoffs(&self, pair: ActionPair) -> (i64, i64) {
        assert!(self.contains(pair), "action pair {pair} out of range");
        let idx = pair.row * self.n2() + pair.col;
        (self.payoff1[idx], self.payoff2[idx])
    }

    pub fn payoff(&self, player: Player, pair: ActionPair) -> i64 {
        let (p1, p2) = self.payoffs(pair);
        match player {
            Player::One => p1,
            Player::Two => p2,
        }
    }

    /// All action pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = ActionPair> + '_ {
        let n2 = self.n2();
        (0..self.n1()).flat_map(move |row| (0..n2).map(move |col| ActionPair::new(row, col)))
    }

    /// Best payoff each player can reach by unilaterally deviating from
    /// `pair` this round, keeping the partner's action fixed. The maximum
    /// ranges over all own actions including the current one, so the result
    /// is never below the stay payoff.
    pub fn deviation_payoffs(&self, pair: ActionPair) -> Result<(i64, i64), GameError> {
        self.check_pair(pair)?;
        let d1 = (0..self.n1())
            .map(|row| self.payoff(Player::One, ActionPair::new(row, pair.col)))
            .max()
            .expect("games are non-empty");
        let d2 = (0..self.n2())
            .map(|col| self.payoff(Player::Two, ActionPair::new(pair.row, col)))
            .max()
            .expect("games are non-empty");
        Ok((d1, d2))
    }

    /// Best deviation action index for `player` at `pair` (lowest index on
    /// ties), together with its payoff.
    pub fn best_deviation(&self, player: Player, pair: ActionPair) -> Result<(usize, i64), GameError> {
        self.check_pair(pair)?;
        let own_range = match player {
            Player::One => 0..self.n1(),
            Player::Two => 0..self.n2(),
        };
        let mut best: Option<(usize, i64)> = None;
        for own in own_range {
            let candidate = match player {
                Player::One => ActionPair::new(own, pair.col),
                Player::Two => ActionPair::new(pair.row, own),
            };
            let p = self.payoff(player, candidate);
            if best.map_or(true, |(_, bp)| p > bp) {
                best = Some((own, p));
            }
        }
        Ok(best.expect("games are non-empty"))
    }

    /// Per-round average payoffs `(v1, v2)` of a goal cycle, as exact
    /// rationals with scale `r = goal.len()`.
    pub fn goal_value(&self, goal: &GoalSequence) -> Result<(ScaledRational, ScaledRational), GameError> {
        let r = goal.len() as i64;
        let (mut sum1, mut sum2) = (0i64, 0i64);
        for &pair in goal.pairs() {
            self.check_pair(pair)?;
            let (p1, p2) = self.payoffs(pair);
            sum1 += p1;
            sum2 += p2;
        }
        Ok((ScaledRational::new(sum1, r), ScaledRational::new(sum2, r)))
    }

    /// Action pairs maximising the payoff sum, in row-major order.
    pub fn max_welfare_pairs(&self) -> Vec<ActionPair> {
        let best = self
            .pairs()
            .map(|pair| {
                let (p1, p2) = self.payoffs(pair);
                p1 + p2
            })
            .max()
            .expect("games are non-empty");
        self.pairs()
            .filter(|&pair| {
                let (p1, p2) = self.payoffs(pair);
                p1 + p2 == best
            })
            .collect()
    }

    /// Pure Nash equilibria: pairs where neither player's deviation payoff
    /// exceeds their stay payoff. May be empty.
    pub fn pure_nash_pairs(&self) -> Vec<ActionPair> {
        self.pairs()
            .filter(|&pair| {
                let (p1, p2) = self.payoffs(pair);
                let (d1, d2) = self.deviation_payoffs(pair).expect("pair from iterator");
                d1 == p1 && d2 == p2
            })
            .collect()
    }

    /// Whether both players face the same game: square matrices with
    /// `payoff2` the transpose of `payoff1`.
    pub fn is_symmetric(&self) -> bool {
        if self.n1() != self.n2() {
            return false;
        }
        self.pairs().all(|pair| {
            let mirrored = ActionPair::new(pair.col, pair.row);
            self.payoff(Player::One, pair) == self.payoff(Player::Two, mirrored)
        })
    }

    /// Difference between the largest and smallest payoff appearing in
    /// either matrix.
    pub fn payoff_spread(&self) -> i64 {
        let all = self.payoff1.iter().chain(self.payoff2.iter());
        let max = all.clone().max().expect("games are non-empty");
        let min = all.min().expect("games are non-empty");
        max - min
    }
}

/// A non-empty cyclic sequence of action pairs played forever once the
/// stabilising prefix is over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoalSequence {
    pairs: Vec<ActionPair>,
}

impl GoalSequence {
    pub fn new(pairs: Vec<ActionPair>) -> Result<Self, GameError> {
        if pairs.is_empty() {
            return Err(GameError::EmptyGoal);
        }
        Ok(GoalSequence { pairs })
    }

    /// Cycle length `r`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn pairs(&self) -> &[ActionPair] {
        &self.pairs
    }

    /// Pair played at cycle position `phase`, wrapping around.
    pub fn at(&self, phase: usize) -> ActionPair {
        self.pairs[phase % self.pairs.len()]
    }

    pub fn validate(&self, game: &Game) -> Result<(), GameError> {
        self.pairs.iter().try_for_each(|&p| game.check_pair(p))
    }
}
