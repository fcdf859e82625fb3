//! Per-pair hazing costs and self-contained minimum-hazing instances.
//!
//! Fix a game and a goal cycle with per-round value `v = (v1, v2)`. Every
//! action pair `a` then gets two exact quantities per player:
//!
//! * hazing value `h_i(a) = v_i - p_i(a)` — how much playing `a` for one
//!   round costs player `i` relative to the goal average;
//! * threshold value `t_i(a) = d_i(a) - v_i` — how much their best one-shot
//!   deviation at `a` gains over the goal average.
//!
//! A prefix stabilises the goal in the patient limit exactly when each
//! player's accumulated hazing strictly exceeds `t` at every step and ends
//! strictly above the goal threshold `theta_i`, the worst-case requirement
//! over the cycle. Everything lives in the grid `(1/r) * Z`, which is what
//! makes the solver's integer walk exact.

use alloc::vec::Vec;
use core::fmt;

use crate::game::{ActionPair, Game, GameError, GoalSequence};
use crate::rational::ScaledRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenhazeError {
    Game(GameError),
    /// No action pair keeps both deviation payoffs strictly below the goal
    /// value, so no a-priori budget can be read off the game.
    NoTrivialBound,
    /// A hand-built instance failed validation.
    BadInstance(&'static str),
}

impl fmt::Display for GenhazeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenhazeError::Game(e) => write!(f, "{e}"),
            GenhazeError::NoTrivialBound => {
                write!(f, "no action pair has both deviation payoffs strictly below the goal value")
            }
            GenhazeError::BadInstance(msg) => write!(f, "invalid instance: {msg}"),
        }
    }
}

impl core::error::Error for GenhazeError {}

impl From<GameError> for GenhazeError {
    fn from(e: GameError) -> Self {
        GenhazeError::Game(e)
    }
}

/// Hazing and threshold values of one action pair, all at the goal scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCost {
    pub h1: ScaledRational,
    pub h2: ScaledRational,
    pub t1: ScaledRational,
    pub t2: ScaledRational,
}

/// Hazing values `(h1, h2)` and threshold values `(t1, t2)` for every pair,
/// row-major. All entries have scale `goal.len()`.
pub fn hazing_threshold_table(game: &Game, goal: &GoalSequence) -> Result<Vec<PairCost>, GenhazeError> {
    goal.validate(game)?;
    let (v1, v2) = game.goal_value(goal)?;
    game.pairs()
        .map(|pair| {
            let (p1, p2) = game.payoffs(pair);
            let (d1, d2) = game.deviation_payoffs(pair)?;
            Ok(PairCost {
                h1: v1 - ScaledRational::from_int(p1),
                h2: v2 - ScaledRational::from_int(p2),
                t1: ScaledRational::from_int(d1) - v1,
                t2: ScaledRational::from_int(d2) - v2,
            })
        })
        .collect()
}

/// Worst-case hazing requirement imposed by the goal cycle itself: the
/// accumulated hazing entering the cycle must strictly exceed
/// `theta_i = max_j (t_i(goal_j) - sum_{m<j} h_i(goal_m))`.
pub fn goal_threshold(game: &Game, goal: &GoalSequence) -> Result<(ScaledRational, ScaledRational), GenhazeError> {
    let costs = hazing_threshold_table(game, goal)?;
    let n2 = game.n2();
    let cost_of = |pair: ActionPair| costs[pair.row * n2 + pair.col];

    let mut theta: Option<(ScaledRational, ScaledRational)> = None;
    let mut acc1 = ScaledRational::zero();
    let mut acc2 = ScaledRational::zero();
    for &pair in goal.pairs() {
        let c = cost_of(pair);
        let need = (c.t1 - acc1, c.t2 - acc2);
        theta = Some(match theta {
            None => need,
            Some((a, b)) => (a.max(need.0), b.max(need.1)),
        });
        acc1 = acc1 + c.h1;
        acc2 = acc2 + c.h2;
    }
    Ok(theta.expect("goal sequences are non-empty"))
}

/// A budget that always suffices when any budget does: walk to the cheapest
/// pair that strictly hurts both players' deviation prospects and haze there
/// until both thresholds are cleared. Returns the bound and the chosen pair
/// (minimum of `theta1 + theta2 + h1(a) + h2(a)` over pairs with
/// `d_i(a) < v_i` for both players, ties broken by lowest `(row, col)`).
pub fn trivial_bound(game: &Game, goal: &GoalSequence) -> Result<(ScaledRational, ActionPair), GenhazeError> {
    let (v1, v2) = game.goal_value(goal)?;
    let (theta1, theta2) = goal_threshold(game, goal)?;
    let mut best: Option<(ScaledRational, ActionPair)> = None;
    for pair in game.pairs() {
        let (d1, d2) = game.deviation_payoffs(pair)?;
        if ScaledRational::from_int(d1) >= v1 || ScaledRational::from_int(d2) >= v2 {
            continue;
        }
        let (p1, p2) = game.payoffs(pair);
        let h_sum = (v1 - ScaledRational::from_int(p1)) + (v2 - ScaledRational::from_int(p2));
        let value = theta1 + theta2 + h_sum;
        if best.map_or(true, |(b, _)| value < b) {
            best = Some((value, pair));
        }
    }
    best.ok_or(GenhazeError::NoTrivialBound)
}

/// Everything the prefix search needs, detached from the game it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenhazeInstance {
    n1: usize,
    n2: usize,
    costs: Vec<PairCost>,
    scale: i64,
    theta1: ScaledRational,
    theta2: ScaledRational,
    bound: ScaledRational,
    max_sw: bool,
}

impl GenhazeInstance {
    /// Builds an instance from raw parts. All rationals must be exactly
    /// representable at `scale`; `max_sw` asserts that every pair has
    /// `h1 + h2 >= 0` (the goal cycle is welfare-maximal), which the solver
    /// and oracle rely on for pruning.
    pub fn new(
        n1: usize,
        n2: usize,
        costs: Vec<PairCost>,
        scale: i64,
        theta: (ScaledRational, ScaledRational),
        bound: ScaledRational,
        max_sw: bool,
    ) -> Result<Self, GenhazeError> {
        if scale < 1 {
            return Err(GenhazeError::BadInstance("scale must be positive"));
        }
        if n1 == 0 || n2 == 0 || costs.len() != n1 * n2 {
            return Err(GenhazeError::BadInstance("cost table shape mismatch"));
        }
        let representable = |x: ScaledRational| x.rescale(scale).is_some();
        for c in &costs {
            if ![c.h1, c.h2, c.t1, c.t2].into_iter().all(representable) {
                return Err(GenhazeError::BadInstance("cost not representable at the instance scale"));
            }
            if max_sw && (c.h1 + c.h2).is_negative() {
                return Err(GenhazeError::BadInstance("max_sw instance with welfare-improving pair"));
            }
        }
        if !representable(theta.0) || !representable(theta.1) {
            return Err(GenhazeError::BadInstance("threshold not representable at the instance scale"));
        }
        let bound = bound
            .rescale(scale)
            .unwrap_or_else(|| ScaledRational::new(bound.floor_at(scale), scale));
        Ok(GenhazeInstance {
            n1,
            n2,
            costs,
            scale,
            theta1: theta.0,
            theta2: theta.1,
            bound,
            max_sw,
        })
    }

    /// Derives the instance for `(game, goal)`. With `bound: None` the
    /// trivial bound is used; an explicit bound is floored to the instance
    /// scale (hazing totals live in `(1/r) * Z`, so flooring never changes
    /// which prefixes qualify).
    pub fn derive(game: &Game, goal: &GoalSequence, bound: Option<ScaledRational>) -> Result<Self, GenhazeError> {
        let costs = hazing_threshold_table(game, goal)?;
        let theta = goal_threshold(game, goal)?;
        let bound = match bound {
            Some(b) => b,
            None => trivial_bound(game, goal)?.0,
        };
        let welfare: Vec<ActionPair> = game.max_welfare_pairs();
        let max_sw = goal.pairs().iter().all(|p| welfare.contains(p));
        GenhazeInstance::new(
            game.n1(),
            game.n2(),
            costs,
            goal.len() as i64,
            theta,
            bound,
            max_sw,
        )
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn pairs(&self) -> impl Iterator<Item = ActionPair> + '_ {
        let n2 = self.n2;
        (0..self.n1).flat_map(move |row| (0..n2).map(move |col| ActionPair::new(row, col)))
    }

    pub fn contains(&self, pair: ActionPair) -> bool {
        pair.row < self.n1 && pair.col < self.n2
    }

    pub fn cost(&self, pair: ActionPair) -> &PairCost {
        assert!(self.contains(pair), "action pair {pair} out of range");
        &self.costs[pair.row * self.n2 + pair.col]
    }

    pub fn costs(&self) -> &[PairCost] {
        &self.costs
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn theta(&self) -> (ScaledRational, ScaledRational) {
        (self.theta1, self.theta2)
    }

    pub fn bound(&self) -> ScaledRational {
        self.bound
    }

    pub fn max_sw(&self) -> bool {
        self.max_sw
    }

    /// Integer numerators at the instance scale, for grid arithmetic.
    pub fn cost_scaled(&self, pair: ActionPair) -> ((i64, i64), (i64, i64)) {
        let c = self.cost(pair);
        let at = |x: ScaledRational| x.rescale(self.scale).expect("validated at construction").num();
        ((at(c.h1), at(c.h2)), (at(c.t1), at(c.t2)))
    }

    pub fn theta_scaled(&self) -> (i64, i64) {
        let at = |x: ScaledRational| x.rescale(self.scale).expect("validated at construction").num();
        (at(self.theta1), at(self.theta2))
    }

    pub fn bound_scaled(&self) -> i64 {
        self.bound.rescale(self.scale).expect("normalised at construction").num()
    }
}
