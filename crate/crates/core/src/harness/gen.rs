//! Seeded random games, payoff points, and impoverishment pairs.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{Coalition, NTUGame, PayoffVector, PlayerId, RawAssignments};
use crate::rational::{rat_int, Rational};
use crate::region::coalition_hull_region;

use super::HarnessError;

/// Parameters for the random-game generator. All draws are deterministic
/// in `seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub n_players: u32,
    pub max_generators: u32,
    pub value_min: Rational,
    pub value_max: Rational,
    pub denominator_bound: u32,
}

impl GenConfig {
    /// Desk-scale defaults: values in [-4, 4] with denominators up to 4.
    pub fn new(seed: u64, n_players: u32) -> GenConfig {
        GenConfig {
            seed,
            n_players,
            max_generators: 3,
            value_min: rat_int(-4),
            value_max: rat_int(4),
            denominator_bound: 4,
        }
    }

    pub fn with_max_generators(mut self, max_generators: u32) -> GenConfig {
        self.max_generators = max_generators;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> GenConfig {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if !(1..=5).contains(&self.n_players) {
            return Err(HarnessError::BadConfig(format!(
                "n_players must be in 1..=5, got {}",
                self.n_players
            )));
        }
        if !(1..=6).contains(&self.max_generators) {
            return Err(HarnessError::BadConfig(format!(
                "max_generators must be in 1..=6, got {}",
                self.max_generators
            )));
        }
        if !(1..=64).contains(&self.denominator_bound) {
            return Err(HarnessError::BadConfig(format!(
                "denominator_bound must be in 1..=64, got {}",
                self.denominator_bound
            )));
        }
        if self.value_min >= self.value_max {
            return Err(HarnessError::BadConfig(
                "value range must be nonempty".to_string(),
            ));
        }
        // An integer must fit in the range so every denominator admits a
        // numerator.
        if self.value_min.ceil() > self.value_max.floor() {
            return Err(HarnessError::BadConfig(
                "value range must contain an integer".to_string(),
            ));
        }
        if self.value_min.abs() > rat_int(1000) || self.value_max.abs() > rat_int(1000) {
            return Err(HarnessError::BadConfig(
                "value range must stay within [-1000, 1000]".to_string(),
            ));
        }
        Ok(())
    }
}

/// A uniform rational in `[min, max]` with denominator at most `bound`:
/// the denominator is drawn first, then a numerator within range.
pub fn random_rational(
    rng: &mut impl Rng,
    min: &Rational,
    max: &Rational,
    bound: u32,
) -> Rational {
    let q = rng.gen_range(1..=i64::from(bound));
    let qr = rat_int(q);
    let lo = (min * &qr).ceil().to_integer().to_i64().expect("desk scale");
    let hi = (max * &qr).floor().to_integer().to_i64().expect("desk scale");
    if lo > hi {
        // The chosen denominator is too coarse for the range; an integer
        // always fits by config validation.
        let lo1 = min.ceil().to_integer().to_i64().expect("desk scale");
        let hi1 = max.floor().to_integer().to_i64().expect("desk scale");
        return rat_int(rng.gen_range(lo1..=hi1));
    }
    Rational::new(rng.gen_range(lo..=hi).into(), q.into())
}

/// A random payoff vector over `players` from the same value pool.
pub fn random_payoff_vector(
    rng: &mut impl Rng,
    players: Coalition,
    cfg: &GenConfig,
) -> PayoffVector {
    let values = players
        .members()
        .map(|_| random_rational(rng, &cfg.value_min, &cfg.value_max, cfg.denominator_bound))
        .collect();
    PayoffVector::new(players, values).expect("dimension matches")
}

/// A validated random game on players `0..n`, deterministic in the seed.
///
/// Coalition values scale with coalition size: a coalition of size `k`
/// draws from the bottom `k/n` of the value range (widened to at least a
/// unit so every denominator has a numerator). Small coalitions are poor
/// and the grand coalition rich, which keeps a healthy share of games
/// with nonempty cores without forcing them.
pub fn random_game(cfg: &GenConfig) -> Result<NTUGame, HarnessError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let players =
        Coalition::from_members((0..cfg.n_players).map(PlayerId)).expect("validated count");
    let full_span = &cfg.value_max - &cfg.value_min;
    let one = rat_int(1);
    let mut assignments = RawAssignments::new();
    for s in players.nonempty_subsets() {
        let scale = Rational::new((s.len() as i64).into(), (players.len() as i64).into());
        let mut span = &full_span * &scale;
        if span < one {
            span = one.clone();
        }
        let mut upper = &cfg.value_min + &span;
        if upper > cfg.value_max {
            upper = cfg.value_max.clone();
        }
        let count = rng.gen_range(1..=cfg.max_generators);
        let mut raw = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let values = s
                .members()
                .map(|_| random_rational(&mut rng, &cfg.value_min, &upper, cfg.denominator_bound))
                .collect();
            raw.push(PayoffVector::new(s, values).expect("dimension matches"));
        }
        assignments.insert(s, raw);
    }
    Ok(NTUGame::new(players, assignments)?)
}

/// An antimonotonicity partner: the grand coalition is untouched and every
/// proper coalition is independently either kept or shifted down by a
/// random nonnegative amount. The premise is re-validated by region
/// containment before returning.
pub fn impoverish(game: &NTUGame, seed: u64) -> NTUGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut result = game.clone();
    for s in game.players().proper_nonempty_subsets() {
        if rng.gen_bool(0.5) {
            continue;
        }
        let delta = random_rational(&mut rng, &Rational::zero(), &rat_int(2), 8);
        if delta.is_zero() {
            continue;
        }
        let shifted = game
            .generator_set(s)
            .expect("present")
            .shift_down(&delta)
            .generators()
            .to_vec();
        result = result
            .with_generator_set(s, shifted)
            .expect("same coalition");
    }
    for s in game.players().proper_nonempty_subsets() {
        let poorer = coalition_hull_region(&result, s).expect("coalition of the game");
        let richer = coalition_hull_region(game, s).expect("coalition of the game");
        assert!(
            poorer.is_subset_of(&richer).expect("same players"),
            "impoverishment must shrink coalition {s}"
        );
    }
    debug_assert_eq!(result.grand_generators(), game.grand_generators());
    result
}
