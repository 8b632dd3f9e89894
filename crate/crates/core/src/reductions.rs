//! Derived games: strong- and weak-secession reduced games, and the
//! epsilon perturbations used by the characterization arguments.
//!
//! All constructors return fully validated games, so the finitely-generated
//! class is closed under each of them.

use thiserror::Error;

use crate::game::{Coalition, GameError, NTUGame, PayoffVector};
use crate::predicates;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("coalition {coalition} must be a nonempty proper subset of {players}")]
    BadCoalition {
        coalition: Coalition,
        players: Coalition,
    },
    #[error("point {point} is not Pareto-efficient; reduced games presuppose an efficient agreement")]
    NotPareto { point: PayoffVector },
    #[error("point is indexed by {got}, expected the full player set {expected}")]
    WrongIndexSet { expected: Coalition, got: Coalition },
    #[error("epsilon must be strictly positive, got {0}")]
    NonPositiveEpsilon(String),
    #[error("sequence length must be at least 1")]
    EmptySequence,
    #[error(transparent)]
    Game(#[from] GameError),
}

/// A strictly positive rational perturbation size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epsilon(Rational);

impl Epsilon {
    pub fn new(value: Rational) -> Result<Epsilon, ReductionError> {
        if value <= num_traits::Zero::zero() {
            return Err(ReductionError::NonPositiveEpsilon(
                crate::rational::format_rational(&value),
            ));
        }
        Ok(Epsilon(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn halved(&self) -> Epsilon {
        Epsilon(&self.0 / Rational::from_integer(2.into()))
    }
}

fn check_reduction_args(
    game: &NTUGame,
    s: Coalition,
    x: &PayoffVector,
) -> Result<(), ReductionError> {
    if x.coalition() != game.players() {
        return Err(ReductionError::WrongIndexSet {
            expected: game.players(),
            got: x.coalition(),
        });
    }
    if s.is_empty() || !s.is_proper_subset_of(game.players()) {
        return Err(ReductionError::BadCoalition {
            coalition: s,
            players: game.players(),
        });
    }
    Ok(())
}

/// Strong-secession reduced game on `s` with respect to the efficient
/// agreement `x`: the grand coalition of the reduced game keeps its
/// original payoff set when it can achieve `x_S`, otherwise it is pinned to
/// the downward hull of `x_S`; strict subcoalitions keep their sets.
pub fn ss_reduced(
    game: &NTUGame,
    s: Coalition,
    x: &PayoffVector,
) -> Result<NTUGame, ReductionError> {
    check_reduction_args(game, s, x)?;
    if !predicates::is_pareto(game, x) {
        return Err(ReductionError::NotPareto { point: x.clone() });
    }
    ss_reduced_any_point(game, s, x)
}

/// [`ss_reduced`] without the Pareto precondition, for experimentation.
pub fn ss_reduced_any_point(
    game: &NTUGame,
    s: Coalition,
    x: &PayoffVector,
) -> Result<NTUGame, ReductionError> {
    check_reduction_args(game, s, x)?;
    let xs = x.restrict(s)?;
    let sub = game.subgame(s)?;
    if predicates::contains(game, s, &xs)? {
        Ok(sub)
    } else {
        Ok(sub.with_generator_set(s, vec![xs])?)
    }
}

/// Weak-secession reduced game on `s` with respect to `x`: the grand
/// coalition of the reduced game is always pinned to the downward hull of
/// `x_S`; strict subcoalitions keep their sets.
pub fn ws_reduced(
    game: &NTUGame,
    s: Coalition,
    x: &PayoffVector,
) -> Result<NTUGame, ReductionError> {
    check_reduction_args(game, s, x)?;
    if !predicates::is_pareto(game, x) {
        return Err(ReductionError::NotPareto { point: x.clone() });
    }
    ws_reduced_any_point(game, s, x)
}

/// [`ws_reduced`] without the Pareto precondition, for experimentation.
pub fn ws_reduced_any_point(
    game: &NTUGame,
    s: Coalition,
    x: &PayoffVector,
) -> Result<NTUGame, ReductionError> {
    check_reduction_args(game, s, x)?;
    let xs = x.restrict(s)?;
    Ok(game.subgame(s)?.with_generator_set(s, vec![xs])?)
}

/// `x` shifted up by `eps / |N|` in every coordinate.
pub fn x_epsilon(x: &PayoffVector, eps: &Epsilon) -> PayoffVector {
    let n = Rational::from_integer((x.dim() as i64).into());
    x.shift_all(&(eps.value() / n))
}

/// The game whose grand-coalition set gains the orthant below
/// `x + eps/|N|`; every proper coalition is unchanged.
pub fn epsilon_game(
    game: &NTUGame,
    x: &PayoffVector,
    eps: &Epsilon,
) -> Result<NTUGame, ReductionError> {
    if x.coalition() != game.players() {
        return Err(ReductionError::WrongIndexSet {
            expected: game.players(),
            got: x.coalition(),
        });
    }
    let n = game.players();
    let mut raw = game.grand_generators().generators().to_vec();
    raw.push(x_epsilon(x, eps));
    Ok(game.with_generator_set(n, raw)?)
}

/// [`epsilon_game`] with every singleton additionally pinned to
/// `x_i + eps/|N|`; non-singleton proper coalitions are unchanged.
pub fn epsilon_x_game(
    game: &NTUGame,
    x: &PayoffVector,
    eps: &Epsilon,
) -> Result<NTUGame, ReductionError> {
    let mut result = epsilon_game(game, x, eps)?;
    let raised = x_epsilon(x, eps);
    for p in game.players().members() {
        let single = Coalition::singleton(p);
        let value = raised.restrict(single)?;
        result = result.with_generator_set(single, vec![value])?;
    }
    Ok(result)
}

/// The halving perturbation sequence `[(V^{eps_j}, x^{eps_j})]` with
/// `eps_j = eps0 / 2^(j-1)` for `j = 1..=k`.
pub fn epsilon_sequence(
    game: &NTUGame,
    x: &PayoffVector,
    eps0: &Epsilon,
    k: usize,
) -> Result<Vec<(NTUGame, PayoffVector)>, ReductionError> {
    if k == 0 {
        return Err(ReductionError::EmptySequence);
    }
    let mut out = Vec::with_capacity(k);
    let mut eps = eps0.clone();
    for _ in 0..k {
        out.push((epsilon_game(game, x, &eps)?, x_epsilon(x, &eps)));
        eps = eps.halved();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::region::hausdorff_linf;
    use crate::testutil::{coal, game_a, pv};

    fn eps(n: i64, d: i64) -> Epsilon {
        Epsilon::new(rat(n, d)).unwrap()
    }

    #[test]
    fn epsilon_rejects_nonpositive() {
        assert!(Epsilon::new(rat_int(0)).is_err());
        assert!(Epsilon::new(rat_int(-1)).is_err());
    }

    #[test]
    fn ss_reduced_pins_when_x_not_achievable() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let r = ss_reduced(&g, coal(&[0]), &x).unwrap();
        assert_eq!(
            r.generator_set(coal(&[0])).unwrap().generators(),
            &[pv(&[0], &[rat_int(1)])]
        );

        let x = pv(&[0, 1], &[rat_int(0), rat_int(1)]);
        let r = ss_reduced(&g, coal(&[1]), &x).unwrap();
        assert_eq!(
            r.generator_set(coal(&[1])).unwrap().generators(),
            &[pv(&[1], &[rat_int(1)])]
        );
    }

    #[test]
    fn ss_reduced_keeps_set_when_x_achievable() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(0), rat_int(1)]);
        let r = ss_reduced(&g, coal(&[0]), &x).unwrap();
        assert_eq!(
            r.generator_set(coal(&[0])).unwrap(),
            g.generator_set(coal(&[0])).unwrap()
        );
    }

    #[test]
    fn ss_reduced_rejects_inefficient_point() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(0), rat_int(0)]);
        assert!(matches!(
            ss_reduced(&g, coal(&[0]), &x),
            Err(ReductionError::NotPareto { .. })
        ));
        // The relaxed constructor accepts it.
        assert!(ss_reduced_any_point(&g, coal(&[0]), &x).is_ok());
    }

    #[test]
    fn ss_reduced_rejects_bad_coalitions() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        assert!(ss_reduced(&g, Coalition::empty(), &x).is_err());
        assert!(ss_reduced(&g, g.players(), &x).is_err());
    }

    #[test]
    fn ws_reduced_always_pins() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let r = ws_reduced(&g, coal(&[0]), &x).unwrap();
        assert_eq!(
            r.generator_set(coal(&[0])).unwrap().generators(),
            &[pv(&[0], &[rat_int(1)])]
        );

        let x = pv(&[0, 1], &[rat_int(1), rat_int(0)]);
        let r = ws_reduced(&g, coal(&[1]), &x).unwrap();
        assert_eq!(
            r.generator_set(coal(&[1])).unwrap().generators(),
            &[pv(&[1], &[rat_int(0)])]
        );
    }

    #[test]
    fn reduced_games_keep_subcoalitions() {
        let g3 = crate::game::NTUGame::from_rows(
            &[0, 1, 2],
            &[
                (&[0], &[&[rat_int(0)]]),
                (&[1], &[&[rat_int(0)]]),
                (&[2], &[&[rat_int(0)]]),
                (&[0, 1], &[&[rat_int(1), rat_int(1)]]),
                (&[0, 2], &[&[rat_int(0), rat_int(0)]]),
                (&[1, 2], &[&[rat_int(0), rat_int(0)]]),
                (&[0, 1, 2], &[&[rat_int(2), rat_int(2), rat_int(2)]]),
            ],
        )
        .unwrap();
        let s = coal(&[0, 1]);
        let x = pv(&[0, 1, 2], &[rat_int(2), rat_int(2), rat_int(2)]);
        let r = ws_reduced(&g3, s, &x).unwrap();
        assert_eq!(
            r.generator_set(s).unwrap().generators(),
            &[pv(&[0, 1], &[rat_int(2), rat_int(2)])]
        );
        for t in [coal(&[0]), coal(&[1])] {
            assert_eq!(r.generator_set(t).unwrap(), g3.generator_set(t).unwrap());
        }
    }

    #[test]
    fn ss_and_ws_agree_exactly_when_x_not_achievable() {
        let g = game_a();
        // x_S not achievable: both pin to the same singleton.
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let s = coal(&[0]);
        assert_eq!(
            ss_reduced(&g, s, &x).unwrap(),
            ws_reduced(&g, s, &x).unwrap()
        );
        // x_S achievable strictly below the singleton maximum: SS keeps the
        // original set, WS pins lower.
        let x = pv(&[0, 1], &[rat_int(-1), rat_int(1)]);
        assert_ne!(
            ss_reduced(&g, s, &x).unwrap(),
            ws_reduced(&g, s, &x).unwrap()
        );
    }

    #[test]
    fn x_epsilon_examples() {
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        assert_eq!(
            x_epsilon(&x, &eps(1, 1)),
            pv(&[0, 1], &[rat(3, 2), rat(3, 2)])
        );
        let x = pv(&[0, 1, 2], &[rat_int(0), rat_int(0), rat_int(0)]);
        assert_eq!(
            x_epsilon(&x, &eps(3, 1)),
            pv(&[0, 1, 2], &[rat_int(1), rat_int(1), rat_int(1)])
        );
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        assert_eq!(
            x_epsilon(&x, &eps(1, 4)),
            pv(&[0, 1], &[rat(9, 8), rat(9, 8)])
        );
    }

    #[test]
    fn epsilon_game_absorbs_or_keeps_generators() {
        let g = game_a();
        // (1,1) <= (3/2,3/2): absorbed.
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let v = epsilon_game(&g, &x, &eps(1, 1)).unwrap();
        assert_eq!(
            v.grand_generators().generators(),
            &[pv(&[0, 1], &[rat(3, 2), rat(3, 2)])]
        );
        // (1,1) and (3/2,1/2) are incomparable: both kept.
        let x = pv(&[0, 1], &[rat_int(1), rat_int(0)]);
        let v = epsilon_game(&g, &x, &eps(1, 1)).unwrap();
        assert_eq!(
            v.grand_generators().generators(),
            &[
                pv(&[0, 1], &[rat_int(1), rat_int(1)]),
                pv(&[0, 1], &[rat(3, 2), rat(1, 2)]),
            ]
        );
        // A shifted point below an existing generator is absorbed.
        let x = pv(&[0, 1], &[rat_int(0), rat_int(0)]);
        let v = epsilon_game(&g, &x, &eps(1, 2)).unwrap();
        assert_eq!(v.grand_generators(), g.grand_generators());
    }

    #[test]
    fn epsilon_game_keeps_proper_coalitions() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let v = epsilon_game(&g, &x, &eps(1, 1)).unwrap();
        for s in g.players().proper_nonempty_subsets() {
            assert_eq!(v.generator_set(s).unwrap(), g.generator_set(s).unwrap());
        }
    }

    #[test]
    fn epsilon_x_game_pins_singletons() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let v = epsilon_x_game(&g, &x, &eps(1, 1)).unwrap();
        assert_eq!(
            v.generator_set(coal(&[0])).unwrap().generators(),
            &[pv(&[0], &[rat(3, 2)])]
        );
        assert_eq!(
            v.generator_set(coal(&[1])).unwrap().generators(),
            &[pv(&[1], &[rat(3, 2)])]
        );
        assert_eq!(
            v.grand_generators().generators(),
            &[pv(&[0, 1], &[rat(3, 2), rat(3, 2)])]
        );
    }

    #[test]
    fn epsilon_sequence_halves() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let seq = epsilon_sequence(&g, &x, &eps(1, 1), 3).unwrap();
        assert_eq!(seq.len(), 3);
        // eps values 1, 1/2, 1/4 shift coordinates by 1/2, 1/4, 1/8.
        assert_eq!(seq[0].1, pv(&[0, 1], &[rat(3, 2), rat(3, 2)]));
        assert_eq!(seq[1].1, pv(&[0, 1], &[rat(5, 4), rat(5, 4)]));
        assert_eq!(seq[2].1, pv(&[0, 1], &[rat(9, 8), rat(9, 8)]));
        assert!(epsilon_sequence(&g, &x, &eps(1, 1), 0).is_err());
    }

    #[test]
    fn epsilon_sequence_hausdorff_contracts() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(1)]);
        let seq = epsilon_sequence(&g, &x, &eps(1, 1), 4).unwrap();
        let mut last: Option<Rational> = None;
        for (j, (game_j, _)) in seq.iter().enumerate() {
            let d = hausdorff_linf(game_j, &g).unwrap();
            // eps_j / |N| with eps_j = 1/2^j.
            assert_eq!(d, rat(1, 2i64.pow(j as u32 + 1)));
            if let Some(prev) = last {
                assert!(d <= prev);
            }
            last = Some(d);
        }
    }

    #[test]
    fn perturbed_point_is_pareto_in_epsilon_game() {
        let g = game_a();
        for x in [
            pv(&[0, 1], &[rat_int(1), rat_int(1)]),
            pv(&[0, 1], &[rat_int(1), rat(1, 2)]),
        ] {
            assert!(crate::predicates::in_core(&g, &x));
            let e = eps(1, 4);
            let v = epsilon_game(&g, &x, &e).unwrap();
            let raised = x_epsilon(&x, &e);
            assert!(crate::predicates::contains(&v, v.players(), &raised).unwrap());
            assert!(crate::predicates::is_pareto(&v, &raised));
        }
    }

    #[test]
    fn monotone_in_epsilon() {
        let g = game_a();
        let x = pv(&[0, 1], &[rat_int(1), rat_int(0)]);
        let big = epsilon_game(&g, &x, &eps(1, 1)).unwrap();
        let small = epsilon_game(&g, &x, &eps(1, 2)).unwrap();
        let rb = crate::region::feasible_region(&big);
        let rs = crate::region::feasible_region(&small);
        assert!(rs.is_subset_of(&rb).unwrap());
    }
}
