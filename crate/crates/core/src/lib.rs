//! Exact analysis of committed action sequences in infinitely repeated
//! two-player games where a player may abandon their current partner and
//! restart the sequence with a fresh one.
//!
//! The crate is organised around a small pipeline:
//!
//! * [`game`] — finite two-player games in normal form and the handful of
//!   quantities everything else is built from (deviation payoffs, goal-cycle
//!   values, welfare-maximal pairs, pure Nash pairs).
//! * [`genhaze`] — per-pair hazing/threshold tables and self-contained
//!   minimum-hazing instances derived from a game and a goal cycle.
//! * [`solver`] — breadth-first dynamic program over accumulated hazing
//!   totals that finds a cheapest stabilising prefix.
//! * [`oracle`] — brute-force enumeration used to cross-check the solver.
//! * [`stability`] — exact finite-discount and limit stability checks for
//!   concrete sequence plans.
//! * [`existence`] — feasibility tests and constructive witness plans.
//! * [`reduction`] — the unbounded-subset-sum encoding used to probe
//!   hardness of the search problem.
//!
//! All decision procedures use exact rational arithmetic; floating point is
//! never consulted. The crate is `no_std` (with `alloc`) so the analysis
//! kernel can be embedded; IO and serialization live in the companion CLI
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod existence;
pub mod game;
pub mod games;
pub mod genhaze;
pub mod oracle;
pub mod rational;
pub mod reduction;
pub mod solver;
pub mod stability;

pub use game::{ActionPair, Game, GameError, GoalSequence, Player};
pub use genhaze::{GenhazeError, GenhazeInstance, PairCost};
pub use rational::ScaledRational;
pub use stability::{SequencePlan, StabilityVerdict, Status, Variant, Witness};

/// Arbitrary-precision rational, re-exported so downstream crates do not
/// need a direct `num` dependency to drive the finite-discount checker.
pub use num_rational::BigRational;
pub use num_bigint::BigInt;
