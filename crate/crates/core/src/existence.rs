//! Does any stabilising prefix exist at all? Sufficient and necessary
//! conditions, plus constructions that produce concrete plans.
//!
//! The key comparison is per action pair: the slack `v_i - d_i(a)` between
//! the goal's per-round value and the best one-shot deviation at `a`. If
//! some pair leaves both players strictly positive slack, hazing there long
//! enough stabilises the goal; if every pair leaves some player strictly
//! negative slack, no plan can ever stabilise it. Ties in between are
//! genuinely unresolved by these tests.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::game::{ActionPair, Game, GameError, GoalSequence};
use crate::rational::ScaledRational;
use crate::stability::{SequencePlan, StabilityError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExistenceError {
    Game(GameError),
    /// The chosen hazing pair does not give both players strictly positive
    /// slack, so the patience construction does not apply.
    PreconditionNotMet { pair: ActionPair },
    /// The required prefix length overflowed the run-length counter.
    PrefixTooLong,
}

impl fmt::Display for ExistenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExistenceError::Game(e) => write!(f, "{e}"),
            ExistenceError::PreconditionNotMet { pair } => {
                write!(f, "pair {pair} does not strictly undercut the goal value for both players")
            }
            ExistenceError::PrefixTooLong => write!(f, "witness prefix length overflows u32"),
        }
    }
}

impl core::error::Error for ExistenceError {}

impl From<GameError> for ExistenceError {
    fn from(e: GameError) -> Self {
        ExistenceError::Game(e)
    }
}

impl From<StabilityError> for ExistenceError {
    fn from(e: StabilityError) -> Self {
        match e {
            StabilityError::Game(g) => ExistenceError::Game(g),
            // Construction only builds strictly positive run counts.
            _ => ExistenceError::PrefixTooLong,
        }
    }
}

/// Per-pair slack between goal value and deviation payoff, `v_i - d_i(a)`.
/// Positive slack means hazing at `a` starves player `i`'s outside option.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairSlack {
    pub pair: ActionPair,
    pub slack1: ScaledRational,
    pub slack2: ScaledRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// `pair` has strictly positive slack for both players; some stabilising
    /// plan exists (see [`construct_witness_plan`]).
    Feasible { pair: ActionPair },
    /// Every pair leaves some player with strictly negative slack; no plan
    /// stabilises this goal at any patience level.
    Infeasible,
    /// Neither test fires: ties on the critical pairs leave the question
    /// open for these criteria.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub status: Feasibility,
    /// Slack for every pair, row-major — the evidence behind the verdict.
    pub slacks: Vec<PairSlack>,
}

/// Classifies whether any stabilising plan can exist for `(game, goal)`.
pub fn goal_feasibility(game: &Game, goal: &GoalSequence) -> Result<FeasibilityVerdict, GameError> {
    goal.validate(game)?;
    let (v1, v2) = game.goal_value(goal)?;
    let zero = ScaledRational::zero();
    let mut slacks = Vec::new();
    for pair in game.pairs() {
        let (d1, d2) = game.deviation_payoffs(pair)?;
        slacks.push(PairSlack {
            pair,
            slack1: v1 - ScaledRational::from_int(d1),
            slack2: v2 - ScaledRational::from_int(d2),
        });
    }
    let witness = slacks.iter().find(|s| s.slack1 > zero && s.slack2 > zero);
    let status = if let Some(s) = witness {
        Feasibility::Feasible { pair: s.pair }
    } else if slacks.iter().all(|s| s.slack1 < zero || s.slack2 < zero) {
        Feasibility::Infeasible
    } else {
        Feasibility::Unknown
    };
    Ok(FeasibilityVerdict { status, slacks })
}

/// Builds a plan that provably stabilises the goal in the patient limit:
/// haze at `pair` for `T` rounds where `T` is the smallest count with
/// `T * min_slack > r * payoff_spread`. Requires strictly positive slack
/// for both players at `pair`.
pub fn construct_witness_plan(
    game: &Game,
    goal: &GoalSequence,
    pair: ActionPair,
) -> Result<SequencePlan, ExistenceError> {
    goal.validate(game)?;
    game.check_pair(pair)?;
    let (v1, v2) = game.goal_value(goal)?;
    let (d1, d2) = game.deviation_payoffs(pair)?;
    let delta = (v1 - ScaledRational::from_int(d1)).min(v2 - ScaledRational::from_int(d2));
    if delta <= ScaledRational::zero() {
        return Err(ExistenceError::PreconditionNotMet { pair });
    }
    let r = goal.len() as i64;
    let kappa = game.payoff_spread();
    // T = floor(r * kappa / delta) + 1; delta is delta.num() / r, so the
    // quotient is r^2 * kappa / delta.num(), all non-negative integers.
    let delta_num = delta.rescale(r).expect("slack has goal scale").num();
    let t = (r as i128 * r as i128 * kappa as i128) / delta_num as i128 + 1;
    let count = u32::try_from(t).map_err(|_| ExistenceError::PrefixTooLong)?;
    Ok(SequencePlan::new(vec![(pair, count)], goal.clone())?)
}

/// For symmetric games: a two-round goal cycle alternating the seats of a
/// welfare-maximal pair, giving both players the same per-round value. Some
/// plan stabilises it whenever a pair keeps both deviation payoffs strictly
/// below half the maximal welfare; returns `None` when the game is not
/// symmetric or no such pair exists.
pub fn fair_alternating_goal(game: &Game) -> Option<GoalSequence> {
    if !game.is_symmetric() {
        return None;
    }
    let star = game.max_welfare_pairs()[0];
    let goal = GoalSequence::new(vec![star, ActionPair::new(star.col, star.row)])
        .expect("two pairs are non-empty");
    let verdict = goal_feasibility(game, &goal).expect("pairs are in range");
    match verdict.status {
        Feasibility::Feasible { .. } => Some(goal),
        _ => None,
    }
}

/// The degenerate stable plan: repeat a pure Nash pair forever with no
/// prefix. `None` when the game has no pure Nash pair.
pub fn nash_plan(game: &Game) -> Option<SequencePlan> {
    let pair = *game.pure_nash_pairs().first()?;
    let goal = GoalSequence::new(vec![pair]).expect("one pair is non-empty");
    Some(SequencePlan::bare(goal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games;
    use crate::stability::{check_finite, check_limit, Status, Variant};
    use alloc::format;
    use alloc::string::ToString;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn pair(row: usize, col: usize) -> ActionPair {
        ActionPair::new(row, col)
    }

    fn goal(pairs: Vec<ActionPair>) -> GoalSequence {
        GoalSequence::new(pairs).unwrap()
    }

    fn sr(num: i64, scale: i64) -> ScaledRational {
        ScaledRational::new(num, scale)
    }

    #[test]
    fn alternating_goal_is_feasible_via_mutual_defection() {
        let g = games::two_tier_cooperation();
        let verdict = goal_feasibility(&g, &goal(vec![pair(0, 2), pair(2, 0)])).unwrap();
        assert_eq!(verdict.status, Feasibility::Feasible { pair: pair(2, 2) });
        let dd = verdict.slacks.iter().find(|s| s.pair == pair(2, 2)).unwrap();
        assert_eq!((dd.slack1, dd.slack2), (sr(15, 2), sr(15, 2)));
    }

    #[test]
    fn zero_sum_goals_are_infeasible() {
        let g = games::rock_paper_scissors();
        let verdict = goal_feasibility(&g, &goal(vec![pair(0, 0)])).unwrap();
        assert_eq!(verdict.status, Feasibility::Infeasible);
        assert!(verdict.slacks.iter().all(|s| s.slack1 < sr(0, 1)));
    }

    #[test]
    fn exact_ties_leave_the_question_open() {
        let g = games::group_project();
        let verdict = goal_feasibility(&g, &goal(vec![pair(0, 1)])).unwrap();
        assert_eq!(verdict.status, Feasibility::Unknown);
        assert!(verdict
            .slacks
            .iter()
            .all(|s| (s.slack1, s.slack2) == (sr(0, 1), sr(0, 1))));
    }

    #[test]
    fn witness_plan_lengths_follow_the_patience_bound() {
        let g = games::two_tier_cooperation();
        let alternating = goal(vec![pair(0, 2), pair(2, 0)]);
        let plan = construct_witness_plan(&g, &alternating, pair(2, 2)).unwrap();
        // delta = 15/2, spread 17: floor(2 * 17 / (15/2)) + 1 = 5.
        assert_eq!(plan.prefix(), &[(pair(2, 2), 5)]);
        assert_eq!(check_limit(&g, &plan).unwrap().status, Status::Stable);

        let nose = games::nose_goes();
        let plan = construct_witness_plan(&nose, &goal(vec![pair(0, 0)]), pair(2, 3)).unwrap();
        // delta = min(99 - 50, 99 - 5) = 49, spread 100: floor(100/49) + 1 = 3.
        assert_eq!(plan.prefix(), &[(pair(2, 3), 3)]);
        assert_eq!(check_limit(&nose, &plan).unwrap().status, Status::Stable);
    }

    #[test]
    fn witness_plans_are_stable_for_patient_players_too() {
        let g = games::two_tier_cooperation();
        let alternating = goal(vec![pair(0, 2), pair(2, 0)]);
        let plan = construct_witness_plan(&g, &alternating, pair(2, 2)).unwrap();
        for k in [6u32, 10, 16] {
            let beta = BigRational::new(
                BigInt::from((1u64 << k) - 1),
                BigInt::from(1u64 << k),
            );
            let verdict = check_finite(&g, &plan, &beta, Variant::FixedRole).unwrap();
            assert_eq!(verdict.status, Status::Stable, "beta = 1 - 2^-{k}");
        }
    }

    #[test]
    fn witness_construction_rejects_insufficient_pairs() {
        let g = games::two_tier_cooperation();
        let alternating = goal(vec![pair(0, 2), pair(2, 0)]);
        // (C2,C2) starves neither player below 17/2.
        let err = construct_witness_plan(&g, &alternating, pair(1, 1)).unwrap_err();
        assert_eq!(err, ExistenceError::PreconditionNotMet { pair: pair(1, 1) });
    }

    #[test]
    fn fair_alternation_exists_for_the_tiered_game() {
        let g = games::two_tier_cooperation();
        let fair = fair_alternating_goal(&g).unwrap();
        assert_eq!(fair.pairs(), &[pair(0, 2), pair(2, 0)]);
        let (v1, v2) = g.goal_value(&fair).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(v1, sr(17, 2));
    }

    #[test]
    fn fair_alternation_needs_symmetry_and_a_hazing_pair() {
        assert!(fair_alternating_goal(&games::matching_pennies()).is_none());
        // Symmetric, but every deviation payoff meets half the welfare.
        assert!(fair_alternating_goal(&games::rock_paper_scissors()).is_none());
        assert!(fair_alternating_goal(&games::group_project()).is_none());
    }

    #[test]
    fn nash_plans_repeat_the_first_equilibrium_pair() {
        let plan = nash_plan(&games::two_tier_cooperation()).unwrap();
        assert!(plan.prefix().is_empty());
        assert_eq!(plan.goal().pairs(), &[pair(2, 2)]);

        let plan = nash_plan(&games::group_project()).unwrap();
        assert_eq!(plan.goal().pairs(), &[pair(0, 1)]);

        assert!(nash_plan(&games::matching_pennies()).is_none());
    }

    #[test]
    fn every_symmetric_two_by_two_game_has_a_nash_plan() {
        // Exhaustive over payoffs in {-1, 0, 1}: symmetric 2x2 games always
        // admit a pure Nash pair, and repeating it is never limit-unstable.
        let mut count = 0;
        for bits in 0..81u32 {
            let vals: Vec<i64> = (0..4).map(|i| ((bits / 3u32.pow(i)) % 3) as i64 - 1).collect();
            let p1 = vec![vec![vals[0], vals[1]], vec![vals[2], vals[3]]];
            let p2 = vec![vec![vals[0], vals[2]], vec![vals[1], vals[3]]];
            let game = Game::from_rows(
                vec!["a".to_string(), "b".to_string()],
                vec!["a".to_string(), "b".to_string()],
                p1,
                p2,
            )
            .unwrap();
            assert!(game.is_symmetric());
            let plan = nash_plan(&game).unwrap_or_else(|| panic!("no Nash pair for {bits}"));
            let status = check_limit(&game, &plan).unwrap().status;
            assert_ne!(status, Status::Unstable, "{}", format!("game {bits}"));
            count += 1;
        }
        assert_eq!(count, 81);
    }
}
