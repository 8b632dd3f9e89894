//! Decision procedures over games: hull membership, interior membership,
//! domination, core, Pareto efficiency, individual rationality, and the
//! search for non-levelness witnesses.
//!
//! Everything here scans generator sets directly; the region module reaches
//! the same answers through box algebra, so the two form an independent
//! cross-check of each other.

use num_traits::One;

use crate::game::{Coalition, GameError, NTUGame, PayoffVector};
use crate::rational::Rational;

/// Evidence that a payoff vector is dominated: the named coalition has a
/// generator strictly better for all its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationWitness {
    pub coalition: Coalition,
    pub generator: PayoffVector,
}

/// Hull membership: `x` is achievable by coalition `s`.
pub fn contains(game: &NTUGame, s: Coalition, x: &PayoffVector) -> Result<bool, GameError> {
    if x.coalition() != s {
        return Err(GameError::GeneratorCoalitionMismatch {
            coalition: s,
            got: x.coalition(),
        });
    }
    Ok(game.generator_set(s)?.hull_contains(x))
}

/// Interior membership: some generator of `s` strictly dominates `x` in
/// every coordinate.
pub fn interior_contains(
    game: &NTUGame,
    s: Coalition,
    x: &PayoffVector,
) -> Result<bool, GameError> {
    if x.coalition() != s {
        return Err(GameError::GeneratorCoalitionMismatch {
            coalition: s,
            got: x.coalition(),
        });
    }
    Ok(game.generator_set(s)?.hull_contains_interior(x))
}

/// Boundary membership: in the hull but not in its interior.
pub fn boundary_contains(
    game: &NTUGame,
    s: Coalition,
    x: &PayoffVector,
) -> Result<bool, GameError> {
    Ok(contains(game, s, x)? && !interior_contains(game, s, x)?)
}

/// `y` dominates `x` via `s`: the restriction of `y` to `s` is achievable
/// by `s` and strictly better than `x` for every member. Coordinates of
/// either vector outside `s` are ignored.
pub fn dominates(
    game: &NTUGame,
    y: &PayoffVector,
    x: &PayoffVector,
    s: Coalition,
) -> Result<bool, GameError> {
    let ys = y.restrict(s)?;
    let xs = x.restrict(s)?;
    Ok(contains(game, s, &ys)? && xs.lt_componentwise(&ys))
}

/// Scans coalitions in ascending bit order and generators in canonical
/// order for a domination witness against `x`; `None` means `x` is
/// undominated.
pub fn find_domination(game: &NTUGame, x: &PayoffVector) -> Option<DominationWitness> {
    assert_eq!(x.coalition(), game.players(), "x must be indexed by N");
    for s in game.coalitions() {
        let xs = x.restrict(s).expect("coalition of the game");
        let set = game.generator_set(s).expect("present by construction");
        for g in set.generators() {
            if xs.lt_componentwise(g) {
                return Some(DominationWitness {
                    coalition: s,
                    generator: g.clone(),
                });
            }
        }
    }
    None
}

/// Core membership: feasible for the grand coalition and undominated.
pub fn in_core(game: &NTUGame, x: &PayoffVector) -> bool {
    game.grand_generators().hull_contains(x) && find_domination(game, x).is_none()
}

/// Weak Pareto efficiency: feasible and not strictly improvable for
/// everyone at once by the grand coalition.
pub fn is_pareto(game: &NTUGame, x: &PayoffVector) -> bool {
    let grand = game.grand_generators();
    grand.hull_contains(x) && !grand.hull_contains_interior(x)
}

/// Individual rationality: feasible and at least the singleton maximum for
/// every player.
pub fn is_individually_rational(game: &NTUGame, x: &PayoffVector) -> bool {
    game.grand_generators().hull_contains(x) && game.b_vector().le_componentwise(x)
}

/// A non-levelness violation: a boundary point `x` of some `V(S)` together
/// with a distinct `y <= x` that is also on the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C2Violation {
    pub coalition: Coalition,
    pub x: PayoffVector,
    pub y: PayoffVector,
}

/// Searches for a non-levelness violation. Generators are always boundary
/// points; lowering one coordinate of a generator stays on the boundary as
/// long as no other generator strictly dominates the result, and a small
/// enough step always avoids that. Single-player games have none:
/// a one-dimensional hull's boundary is a single point.
///
/// Scan order is deterministic: coalitions ascending, generators canonical,
/// coordinates from the highest player label down, step 1 shrunk only when
/// a competing generator forces it.
pub fn find_c2_violation(game: &NTUGame) -> Option<C2Violation> {
    for s in game.coalitions() {
        if s.len() < 2 {
            continue;
        }
        let set = game.generator_set(s).expect("present by construction");
        let members: Vec<_> = s.members().collect();
        for g in set.generators() {
            for &j in members.iter().rev() {
                let step = safe_step(set.generators(), g, s, j);
                let idx = s.member_index(j).expect("member of s");
                let mut values = g.values().to_vec();
                values[idx] = &values[idx] - &step;
                let y = PayoffVector::new(s, values).expect("same dimension");
                debug_assert!(set.hull_contains(&y) && !set.hull_contains_interior(&y));
                return Some(C2Violation {
                    coalition: s,
                    x: g.clone(),
                    y,
                });
            }
        }
    }
    None
}

/// Largest safe downward step at coordinate `j` of generator `g`: the
/// result must stay outside every open down-orthant. Competing generators
/// strictly above `g` on all other coordinates sit strictly below it on
/// `j` (the set is an antichain), so stepping at most down to the highest
/// such competitor keeps the point on the boundary.
fn safe_step(
    generators: &[PayoffVector],
    g: &PayoffVector,
    s: Coalition,
    j: crate::game::PlayerId,
) -> Rational {
    let g_j = g.get(j).expect("member of s");
    let mut ceiling: Option<Rational> = None;
    for h in generators {
        if h == g {
            continue;
        }
        let dominates_rest = s
            .members()
            .filter(|&i| i != j)
            .all(|i| h.get(i).expect("member") > g.get(i).expect("member"));
        if dominates_rest {
            let h_j = h.get(j).expect("member").clone();
            debug_assert!(&h_j < g_j, "antichain property");
            ceiling = Some(match ceiling {
                Some(c) if c >= h_j => c,
                _ => h_j,
            });
        }
    }
    let one = Rational::one();
    match ceiling {
        None => one,
        Some(c) => {
            let gap = g_j - &c;
            if gap >= one {
                one
            } else {
                // Step halfway into the remaining gap; the result stays
                // strictly above the competitor's level.
                gap / (Rational::one() + Rational::one())
            }
        }
    }
}
