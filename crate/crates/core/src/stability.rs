//! Exact stability checks for committed sequence plans.
//!
//! A plan commits both players to a finite prefix followed by a goal cycle
//! repeated forever. At every step a player may instead take their best
//! one-shot deviation and then restart the whole sequence with a fresh
//! partner. A plan is stable at discount factor `beta` when no such
//! deviate-and-restart ever beats staying, for either player, at any step.
//!
//! Two checkers are provided:
//!
//! * [`check_finite`] evaluates the defining inequalities at a concrete
//!   rational `beta` with arbitrary-precision arithmetic. Ties count as
//!   stable (the inequality is weak).
//! * [`check_limit`] decides stability for all sufficiently patient players
//!   via accumulated-hazing comparisons: the plan is limit-stable iff the
//!   hazing total strictly exceeds the threshold value at every step. Ties
//!   here are reported as [`Status::Boundary`] — stability then genuinely
//!   depends on how the limit is approached.
//!
//! The restart stream can either keep roles fixed or randomly reassign who
//! sits on which side ([`Variant`]); reassignment replaces each player's
//! restart value with the average of the two. Only the finite checker
//! supports reassignment — no closed-form limit rule is implemented for it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::game::{ActionPair, Game, GameError, GoalSequence, Player};
use crate::genhaze::{hazing_threshold_table, GenhazeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Restarting pairs the deviator with a fresh partner in the same seat.
    FixedRole,
    /// Restarting reassigns seats uniformly at random, so the continuation
    /// value is the average of the two players' stream values.
    RandomReassignment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityError {
    Game(GameError),
    /// Discount factors must satisfy `0 < beta < 1`.
    InvalidBeta,
    /// Run-length counts in a prefix must be at least 1.
    EmptyRun,
}

impl fmt::Display for StabilityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityError::Game(e) => write!(f, "{e}"),
            StabilityError::InvalidBeta => write!(f, "discount factor must be strictly between 0 and 1"),
            StabilityError::EmptyRun => write!(f, "prefix runs must have count >= 1"),
        }
    }
}

impl core::error::Error for StabilityError {}

impl From<GameError> for StabilityError {
    fn from(e: GameError) -> Self {
        StabilityError::Game(e)
    }
}

impl From<GenhazeError> for StabilityError {
    fn from(e: GenhazeError) -> Self {
        match e {
            GenhazeError::Game(g) => StabilityError::Game(g),
            // Cost-table derivation for a validated plan can only fail on
            // game-shape grounds.
            _ => StabilityError::Game(GameError::ShapeMismatch),
        }
    }
}

/// A committed sequence: a run-length-encoded finite prefix followed by a
/// goal cycle repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePlan {
    prefix: Vec<(ActionPair, u32)>,
    goal: GoalSequence,
}

impl SequencePlan {
    pub fn new(prefix: Vec<(ActionPair, u32)>, goal: GoalSequence) -> Result<Self, StabilityError> {
        if prefix.iter().any(|&(_, count)| count == 0) {
            return Err(StabilityError::EmptyRun);
        }
        Ok(SequencePlan { prefix, goal })
    }

    /// Plan with no prefix: play the goal cycle from round zero.
    pub fn bare(goal: GoalSequence) -> Self {
        SequencePlan { prefix: Vec::new(), goal }
    }

    pub fn prefix(&self) -> &[(ActionPair, u32)] {
        &self.prefix
    }

    pub fn goal(&self) -> &GoalSequence {
        &self.goal
    }

    /// Total prefix length `T`. Checking cost grows linearly in `T`, so
    /// plans with huge run counts are expensive to verify.
    pub fn prefix_len(&self) -> usize {
        self.prefix.iter().map(|&(_, c)| c as usize).sum()
    }

    /// The prefix with runs expanded to individual steps.
    pub fn expanded_prefix(&self) -> Vec<ActionPair> {
        let mut out = Vec::with_capacity(self.prefix_len());
        for &(pair, count) in &self.prefix {
            out.extend(core::iter::repeat(pair).take(count as usize));
        }
        out
    }

    /// Pair committed at step `k` (prefix, then goal cycle forever).
    pub fn step(&self, k: usize) -> ActionPair {
        let t = self.prefix_len();
        if k < t {
            self.expanded_prefix()[k]
        } else {
            self.goal.at(k - t)
        }
    }

    pub fn validate(&self, game: &Game) -> Result<(), GameError> {
        for &(pair, _) in &self.prefix {
            game.check_pair(pair)?;
        }
        self.goal.validate(game)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Stable,
    Unstable,
    Boundary,
}

/// The first step at which a check fails (or, for [`Status::Boundary`],
/// first holds with equality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Step index into the committed sequence, counting from 0; steps at or
    /// past the prefix length sit inside the goal cycle.
    pub step: usize,
    pub player: Player,
    /// The deviating player's most profitable action at this step.
    pub deviation: usize,
    /// Stay-value minus deviate-value; negative means deviating wins.
    pub margin: BigRational,
    /// Undiscounted per-round average the deviator would have collected
    /// through this step, when the finite checker produced the witness.
    pub deviation_average: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
}

impl StabilityVerdict {
    fn stable() -> Self {
        StabilityVerdict { status: Status::Stable, witness: None }
    }

    pub fn is_stable(&self) -> bool {
        self.status == Status::Stable
    }
}

/// One evaluated inequality from the finite checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeviationCheck {
    pub step: usize,
    pub player: Player,
    pub deviation: usize,
    pub margin: BigRational,
    pub deviation_average: BigRational,
}

/// Verdict plus every inequality the finite checker evaluated, in step
/// order. One check per player per step, `T + r` steps in total — later
/// steps repeat the goal cycle verbatim and need no further checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteReport {
    pub verdict: StabilityVerdict,
    pub checks: Vec<DeviationCheck>,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Discounted stream values `(S1, S2)` of the plan at `beta`: the payoff of
/// following prefix-then-goal forever.
pub fn plan_value(
    game: &Game,
    plan: &SequencePlan,
    beta: &BigRational,
) -> Result<(BigRational, BigRational), StabilityError> {
    let eval = FiniteEval::prepare(game, plan, beta)?;
    Ok((eval.stream[0].clone(), eval.stream[1].clone()))
}

struct FiniteEval {
    sigma: Vec<ActionPair>,
    /// Discounted tail value of the committed sequence from step `k`, for
    /// `k <= T`; index `T` is the value at the first goal step.
    tails: Vec<[BigRational; 2]>,
    /// Tail value entering the goal cycle at phase `j`.
    cycle_tails: Vec<[BigRational; 2]>,
    /// Full stream value from step 0 for each player.
    stream: [BigRational; 2],
}

impl FiniteEval {
    fn prepare(game: &Game, plan: &SequencePlan, beta: &BigRational) -> Result<Self, StabilityError> {
        plan.validate(game)?;
        if !(beta > &BigRational::zero() && beta < &BigRational::one()) {
            return Err(StabilityError::InvalidBeta);
        }
        let sigma = plan.expanded_prefix();
        let goal = plan.goal();
        let r = goal.len();

        let pay = |player: Player, pair: ActionPair| big(game.payoff(player, pair));

        // beta^r and the cycle geometric factor 1/(1 - beta^r).
        let mut beta_r = BigRational::one();
        for _ in 0..r {
            beta_r *= beta;
        }
        let cycle_denom = BigRational::one() - beta_r;

        let mut cycle_tails = Vec::with_capacity(r);
        for phase in 0..r {
            let mut acc = [BigRational::zero(), BigRational::zero()];
            let mut pw = BigRational::one();
            for j in 0..r {
                let pair = goal.at(phase + j);
                acc[0] += &pw * pay(Player::One, pair);
                acc[1] += &pw * pay(Player::Two, pair);
                pw *= beta;
            }
            cycle_tails.push([&acc[0] / &cycle_denom, &acc[1] / &cycle_denom]);
        }

        let t_len = sigma.len();
        let mut tails = vec![[BigRational::zero(), BigRational::zero()]; t_len + 1];
        tails[t_len] = cycle_tails[0].clone();
        for k in (0..t_len).rev() {
            let next = tails[k + 1].clone();
            tails[k] = [
                pay(Player::One, sigma[k]) + beta * &next[0],
                pay(Player::Two, sigma[k]) + beta * &next[1],
            ];
        }
        let stream = tails[0].clone();

        Ok(FiniteEval { sigma, tails, cycle_tails, stream })
    }
}

/// Evaluates every deviate-and-restart inequality of `plan` at `beta`
/// exactly and reports each margin, with the verdict keyed to the first
/// strict violation. Ties are stable.
pub fn check_finite_report(
    game: &Game,
    plan: &SequencePlan,
    beta: &BigRational,
    variant: Variant,
) -> Result<FiniteReport, StabilityError> {
    let eval = FiniteEval::prepare(game, plan, beta)?;
    let goal = plan.goal();
    let t_len = eval.sigma.len();
    let r = goal.len();

    // What a restart is worth before discounting by one round of delay.
    let restart: [BigRational; 2] = match variant {
        Variant::FixedRole => eval.stream.clone(),
        Variant::RandomReassignment => {
            let avg = (&eval.stream[0] + &eval.stream[1]) / big(2);
            [avg.clone(), avg]
        }
    };

    let mut checks = Vec::with_capacity(2 * (t_len + r));
    let mut cumulative = [BigInt::zero(), BigInt::zero()];
    for step in 0..t_len + r {
        let pair = if step < t_len { eval.sigma[step] } else { goal.at(step - t_len) };
        for (pi, player) in Player::BOTH.into_iter().enumerate() {
            let (deviation, dev_payoff) = game.best_deviation(player, pair).expect("plan validated");
            let stay = if step < t_len {
                eval.tails[step][pi].clone()
            } else {
                eval.cycle_tails[step - t_len][pi].clone()
            };
            let leave = big(dev_payoff) + beta * &restart[pi];
            let margin = stay - leave;
            let deviation_average = BigRational::new(
                &cumulative[pi] + BigInt::from(dev_payoff),
                BigInt::from(step as i64 + 1),
            );
            checks.push(DeviationCheck { step, player, deviation, margin, deviation_average });
        }
        let (p1, p2) = game.payoffs(pair);
        cumulative[0] += BigInt::from(p1);
        cumulative[1] += BigInt::from(p2);
    }

    let witness = checks.iter().find(|c| c.margin.is_negative()).map(|c| Witness {
        step: c.step,
        player: c.player,
        deviation: c.deviation,
        margin: c.margin.clone(),
        deviation_average: Some(c.deviation_average.clone()),
    });
    let verdict = match witness {
        Some(w) => StabilityVerdict { status: Status::Unstable, witness: Some(w) },
        None => StabilityVerdict::stable(),
    };
    Ok(FiniteReport { verdict, checks })
}

/// Like [`check_finite_report`] but returns only the verdict.
pub fn check_finite(
    game: &Game,
    plan: &SequencePlan,
    beta: &BigRational,
    variant: Variant,
) -> Result<StabilityVerdict, StabilityError> {
    Ok(check_finite_report(game, plan, beta, variant)?.verdict)
}

/// Decides stability for all sufficiently patient players (fixed roles):
/// stable iff at every step each player's accumulated hazing strictly
/// exceeds the step's threshold value. A strict violation yields
/// [`Status::Unstable`]; an exact tie with no violation elsewhere yields
/// [`Status::Boundary`], where the finite checks may go either way however
/// close `beta` gets to 1.
pub fn check_limit(game: &Game, plan: &SequencePlan) -> Result<StabilityVerdict, StabilityError> {
    plan.validate(game)?;
    let goal = plan.goal();
    let r = goal.len() as i64;
    let costs = hazing_threshold_table(game, goal)?;
    let scaled = |x: crate::rational::ScaledRational| x.rescale(r).expect("cost tables have goal scale").num();
    let n2 = game.n2();

    // Accumulated hazing numerators at scale r, per player, before the
    // current step. Over one full goal cycle the hazing sums to zero, so
    // checking the prefix plus a single cycle covers every step.
    let mut acc = [0i64, 0i64];
    let mut tie: Option<Witness> = None;
    let sigma = plan.expanded_prefix();
    for (step, &pair) in sigma.iter().chain(goal.pairs()).enumerate() {
        let cost = &costs[pair.row * n2 + pair.col];
        for (pi, player) in Player::BOTH.into_iter().enumerate() {
            let t = scaled(if pi == 0 { cost.t1 } else { cost.t2 });
            let margin = acc[pi] - t;
            if margin > 0 {
                continue;
            }
            let (deviation, _) = game.best_deviation(player, pair).expect("plan validated");
            let witness = Witness {
                step,
                player,
                deviation,
                margin: BigRational::new(BigInt::from(margin), BigInt::from(r)),
                deviation_average: None,
            };
            if margin < 0 {
                return Ok(StabilityVerdict { status: Status::Unstable, witness: Some(witness) });
            }
            if tie.is_none() {
                tie = Some(witness);
            }
        }
        acc[0] += scaled(cost.h1);
        acc[1] += scaled(cost.h2);
    }
    Ok(match tie {
        Some(w) => StabilityVerdict { status: Status::Boundary, witness: Some(w) },
        None => StabilityVerdict::stable(),
    })
}

/// Runs the finite checker across a list of discount factors.
pub fn sweep_beta(
    game: &Game,
    plan: &SequencePlan,
    betas: &[BigRational],
    variant: Variant,
) -> Result<Vec<(BigRational, StabilityVerdict)>, StabilityError> {
    betas
        .iter()
        .map(|beta| Ok((beta.clone(), check_finite(game, plan, beta, variant)?)))
        .collect()
}
