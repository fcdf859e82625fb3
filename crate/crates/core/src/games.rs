//! Benchmark games used across tests, docs, and example files.
//!
//! Each constructor returns a fresh [`Game`]; payoff tables are written
//! row-by-row as `(p1, p2)` in the comments.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::game::Game;

fn labels(names: &[&str]) -> Vec<alloc::string::String> {
    names.iter().map(|n| n.to_string()).collect()
}

/// Symmetric 3x3 dilemma with two cooperation tiers and a defection action.
///
/// ```text
///        C1        C2        D
/// C1   (8,8)     (0,8)     (0,17)
/// C2   (8,0)     (2,2)     (0,11)
/// D    (17,0)    (11,0)    (1,1)
/// ```
///
/// Defection dominates round-by-round, yet alternating `(C1,D)`/`(D,C1)`
/// maximises welfare — the interesting regime for stabilising prefixes.
pub fn two_tier_cooperation() -> Game {
    Game::from_rows(
        labels(&["C1", "C2", "D"]),
        labels(&["C1", "C2", "D"]),
        vec![vec![8, 0, 0], vec![8, 2, 0], vec![17, 11, 1]],
        vec![vec![8, 8, 17], vec![0, 2, 11], vec![0, 0, 1]],
    )
    .expect("fixture is well-formed")
}

/// Two partners each prefer the other to do the work; mismatches pay.
///
/// ```text
///        T1       T2
/// T1   (0,0)    (1,1)
/// T2   (1,1)    (0,0)
/// ```
pub fn group_project() -> Game {
    Game::from_rows(
        labels(&["T1", "T2"]),
        labels(&["T1", "T2"]),
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, 1], vec![1, 0]],
    )
    .expect("fixture is well-formed")
}

/// Cooperation pays unless someone defects, and two hazing actions let the
/// players pay each other off asymmetrically.
///
/// ```text
///        C         D        H1       H2
/// C    (99,99)  (0,100)   (0,0)    (0,0)
/// D    (100,0)   (0,0)    (0,0)    (0,0)
/// H1    (0,0)    (0,0)    (0,0)    (5,50)
/// H2    (0,0)    (0,0)   (50,5)    (0,0)
/// ```
pub fn nose_goes() -> Game {
    Game::from_rows(
        labels(&["C", "D", "H1", "H2"]),
        labels(&["C", "D", "H1", "H2"]),
        vec![
            vec![99, 0, 0, 0],
            vec![100, 0, 0, 0],
            vec![0, 0, 0, 5],
            vec![0, 0, 50, 0],
        ],
        vec![
            vec![99, 100, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 50],
            vec![0, 0, 5, 0],
        ],
    )
    .expect("fixture is well-formed")
}

/// Coordination with catastrophic mismatches; each matched outcome favours
/// one side only.
///
/// ```text
///         R             C
/// r     (1,0)      (-100,-100)
/// c  (-100,-100)      (0,1)
/// ```
pub fn tightrope() -> Game {
    Game::from_rows(
        labels(&["r", "c"]),
        labels(&["R", "C"]),
        vec![vec![1, -100], vec![-100, 0]],
        vec![vec![0, -100], vec![-100, 1]],
    )
    .expect("fixture is well-formed")
}

/// The column player is content either way; the row player profits only at
/// `(P,P)` but can never pull the partner there.
///
/// ```text
///        P        S
/// P    (1,0)    (0,1)
/// S    (0,1)    (0,1)
/// ```
pub fn pity() -> Game {
    Game::from_rows(
        labels(&["P", "S"]),
        labels(&["P", "S"]),
        vec![vec![1, 0], vec![0, 0]],
        vec![vec![0, 1], vec![1, 1]],
    )
    .expect("fixture is well-formed")
}

/// Standard rock-paper-scissors with win = 1, everything else 0.
pub fn rock_paper_scissors() -> Game {
    Game::from_rows(
        labels(&["R", "P", "S"]),
        labels(&["R", "P", "S"]),
        vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
        vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]],
    )
    .expect("fixture is well-formed")
}

/// Matching pennies: the row player wants a mismatch, the column player a
/// match. Not symmetric and has no pure Nash pair.
pub fn matching_pennies() -> Game {
    Game::from_rows(
        labels(&["H", "T"]),
        labels(&["H", "T"]),
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![1, 0], vec![0, 1]],
    )
    .expect("fixture is well-formed")
}
