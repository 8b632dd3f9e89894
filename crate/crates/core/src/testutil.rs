//! Fixtures shared across the unit-test modules.

use crate::game::{Coalition, NTUGame, PayoffVector, PlayerId};
use crate::rational::{rat_int, Rational};

/// Two players, singletons worth 0, grand coalition generated by (1,1).
/// The running example: its core is the union of the two boundary faces
/// [1,1] x [0,1] and [0,1] x [1,1].
pub fn game_a() -> NTUGame {
    NTUGame::from_rows(
        &[0, 1],
        &[
            (&[0], &[&[rat_int(0)]]),
            (&[1], &[&[rat_int(0)]]),
            (&[0, 1], &[&[rat_int(1), rat_int(1)]]),
        ],
    )
    .unwrap()
}

/// Payoff vector over the given member labels.
pub fn pv(members: &[u32], values: &[Rational]) -> PayoffVector {
    let c = Coalition::from_members(members.iter().map(|&p| PlayerId(p))).unwrap();
    PayoffVector::new(c, values.to_vec()).unwrap()
}

/// Coalition from member labels.
pub fn coal(members: &[u32]) -> Coalition {
    Coalition::from_members(members.iter().map(|&p| PlayerId(p))).unwrap()
}
