//! Finitely-generated NTU games.
//!
//! A game assigns every nonempty coalition a finite, normalized generator
//! set; the coalition's payoff set is the downward (comprehensive) hull of
//! its generators. This subclass is closed, comprehensive, proper and
//! bounded-above by construction, and it freely violates non-levelness,
//! which is the whole point: weakly dominated boundary points stay on the
//! boundary.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::rational::{format_rational, Rational};

/// A player label: a small non-negative integer, usable as a bit index.
///
/// Top-level games use contiguous labels `0..n`; subgames and reduced games
/// keep the parent's labels so their generator sets stay literally equal to
/// the parent's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(pub u32);

impl PlayerId {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of players as a bit mask. The empty set is representable (set
/// algebra needs it) but never keys a payoff set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coalition(u32);

/// Largest usable player label (exclusive).
pub const MAX_PLAYERS: u32 = 32;

impl Coalition {
    pub fn empty() -> Self {
        Coalition(0)
    }

    pub fn from_bits(bits: u32) -> Self {
        Coalition(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(p: PlayerId) -> Self {
        Coalition(1 << p.0)
    }

    /// Builds a coalition from labels, rejecting duplicates and labels
    /// beyond the bit-mask width.
    pub fn from_members<I: IntoIterator<Item = PlayerId>>(members: I) -> Result<Self, GameError> {
        let mut bits = 0u32;
        for p in members {
            if p.0 >= MAX_PLAYERS {
                return Err(GameError::PlayerOutOfRange(p));
            }
            let bit = 1 << p.0;
            if bits & bit != 0 {
                return Err(GameError::DuplicatePlayer(p));
            }
            bits |= bit;
        }
        Ok(Coalition(bits))
    }

    pub fn members(self) -> impl Iterator<Item = PlayerId> {
        (0..MAX_PLAYERS)
            .filter(move |i| self.0 & (1 << i) != 0)
            .map(PlayerId)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: PlayerId) -> bool {
        p.0 < MAX_PLAYERS && self.0 & (1 << p.0) != 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Coalition) -> bool {
        self.is_subset_of(other) && self != other
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub fn intersect(self, other: Coalition) -> Coalition {
        Coalition(self.0 & other.0)
    }

    pub fn without(self, p: PlayerId) -> Coalition {
        Coalition(self.0 & !(1 << p.0))
    }

    /// All nonempty subsets in ascending bit order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = Coalition> {
        let full = self.0;
        (1..=full).filter(move |s| s & !full == 0).map(Coalition)
    }

    /// All nonempty proper subsets in ascending bit order.
    pub fn proper_nonempty_subsets(self) -> impl Iterator<Item = Coalition> {
        let full = self.0;
        self.nonempty_subsets().filter(move |s| s.0 != full)
    }

    /// Position of `p` among the members in ascending label order.
    pub fn member_index(self, p: PlayerId) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        Some((self.0 & ((1 << p.0) - 1)).count_ones() as usize)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "}}")
    }
}

/// A payoff vector indexed by exactly one coalition's members; coordinates
/// are stored in ascending player-label order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PayoffVector {
    coalition: Coalition,
    values: Vec<Rational>,
}

impl PayoffVector {
    pub fn new(coalition: Coalition, values: Vec<Rational>) -> Result<Self, GameError> {
        if values.len() != coalition.len() {
            return Err(GameError::DimensionMismatch {
                coalition,
                expected: coalition.len(),
                got: values.len(),
            });
        }
        Ok(PayoffVector { coalition, values })
    }

    pub fn coalition(&self) -> Coalition {
        self.coalition
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, p: PlayerId) -> Option<&Rational> {
        self.coalition.member_index(p).map(|i| &self.values[i])
    }

    /// Coordinates restricted to `s`, which must be a subset of this
    /// vector's coalition.
    pub fn restrict(&self, s: Coalition) -> Result<PayoffVector, GameError> {
        if !s.is_subset_of(self.coalition) {
            return Err(GameError::NotASubset {
                subset: s,
                of: self.coalition,
            });
        }
        let values = s
            .members()
            .map(|p| self.get(p).expect("member of subset").clone())
            .collect();
        Ok(PayoffVector {
            coalition: s,
            values,
        })
    }

    /// Componentwise `self <= other` over the shared coalition (must
    /// match). Distinct from the lexicographic `PartialOrd`, which only
    /// orders canonical listings.
    pub fn le_componentwise(&self, other: &PayoffVector) -> bool {
        assert_eq!(self.coalition, other.coalition, "coalition mismatch");
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Componentwise strict `self < other` in every coordinate.
    pub fn lt_componentwise(&self, other: &PayoffVector) -> bool {
        assert_eq!(self.coalition, other.coalition, "coalition mismatch");
        self.values.iter().zip(&other.values).all(|(a, b)| a < b)
    }

    /// L-infinity distance to another vector over the same coalition.
    pub fn linf_distance(&self, other: &PayoffVector) -> Rational {
        assert_eq!(self.coalition, other.coalition, "coalition mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                let d = a - b;
                if d < num_traits::Zero::zero() {
                    -d
                } else {
                    d
                }
            })
            .max()
            .expect("nonempty vector")
    }

    /// A copy with `delta` added to every coordinate.
    pub fn shift_all(&self, delta: &Rational) -> PayoffVector {
        PayoffVector {
            coalition: self.coalition,
            values: self.values.iter().map(|v| v + delta).collect(),
        }
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(v))?;
        }
        write!(f, ")")
    }
}

/// A normalized finite generator set: a nonempty, duplicate-free antichain
/// under componentwise `<=`, sorted lexicographically. Its downward hull is
/// the coalition's payoff set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    coalition: Coalition,
    generators: Vec<PayoffVector>,
}

impl GeneratorSet {
    /// Normalizes a raw point set: drops duplicates and points weakly
    /// dominated by another point, then sorts. The downward hull is
    /// unchanged.
    pub fn normalize(
        coalition: Coalition,
        raw: Vec<PayoffVector>,
    ) -> Result<GeneratorSet, GameError> {
        if coalition.is_empty() {
            return Err(GameError::EmptyCoalition);
        }
        if raw.is_empty() {
            return Err(GameError::EmptyGeneratorSet(coalition));
        }
        for g in &raw {
            if g.coalition() != coalition {
                return Err(GameError::GeneratorCoalitionMismatch {
                    coalition,
                    got: g.coalition(),
                });
            }
        }
        let mut points = raw;
        points.sort();
        points.dedup();
        let kept: Vec<PayoffVector> = points
            .iter()
            .filter(|g| !points.iter().any(|h| h != *g && g.le_componentwise(h)))
            .cloned()
            .collect();
        debug_assert!(!kept.is_empty(), "antichain of a nonempty set is nonempty");
        Ok(GeneratorSet {
            coalition,
            generators: kept,
        })
    }

    pub fn coalition(&self) -> Coalition {
        self.coalition
    }

    pub fn generators(&self) -> &[PayoffVector] {
        &self.generators
    }

    /// Downward-hull membership: some generator weakly dominates `x`.
    pub fn hull_contains(&self, x: &PayoffVector) -> bool {
        self.generators.iter().any(|g| x.le_componentwise(g))
    }

    /// Interior membership: some generator strictly dominates `x` in every
    /// coordinate. For a downward hull the interior is exactly the union of
    /// the generators' open down-orthants.
    pub fn hull_contains_interior(&self, x: &PayoffVector) -> bool {
        self.generators.iter().any(|g| x.lt_componentwise(g))
    }

    /// Every generator shifted down by the same nonnegative amount.
    pub fn shift_down(&self, delta: &Rational) -> GeneratorSet {
        let neg = -delta.clone();
        let shifted = self
            .generators
            .iter()
            .map(|g| g.shift_all(&neg))
            .collect();
        // Shifting preserves the antichain property and the sort order.
        GeneratorSet {
            coalition: self.coalition,
            generators: shifted,
        }
    }
}

/// Raw input for one coalition of [`NTUGame::new`].
pub type RawAssignments = BTreeMap<Coalition, Vec<PayoffVector>>;

/// A finitely-generated NTU game: a finite player set plus a normalized
/// generator set for every nonempty coalition. `V(empty) = empty` is encoded
/// by the absence of an entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NTUGame {
    players: Coalition,
    payoff_sets: BTreeMap<Coalition, GeneratorSet>,
}

impl NTUGame {
    /// Validates and normalizes a full assignment. Every nonempty coalition
    /// of `players` must be present with a nonempty point set of matching
    /// dimension.
    pub fn new(players: Coalition, assignments: RawAssignments) -> Result<Self, GameError> {
        if players.is_empty() {
            return Err(GameError::EmptyPlayerSet);
        }
        for s in assignments.keys() {
            if s.is_empty() {
                return Err(GameError::EmptyCoalition);
            }
            if !s.is_subset_of(players) {
                return Err(GameError::ForeignCoalition {
                    coalition: *s,
                    players,
                });
            }
        }
        let mut payoff_sets = BTreeMap::new();
        let mut assignments = assignments;
        for s in players.nonempty_subsets() {
            let raw = assignments
                .remove(&s)
                .ok_or(GameError::MissingCoalition(s))?;
            payoff_sets.insert(s, GeneratorSet::normalize(s, raw)?);
        }
        Ok(NTUGame {
            players,
            payoff_sets,
        })
    }

    /// Convenience constructor from integer labels and plain rational rows.
    pub fn from_rows(
        players: &[u32],
        rows: &[(&[u32], &[&[Rational]])],
    ) -> Result<Self, GameError> {
        let players = Coalition::from_members(players.iter().map(|&p| PlayerId(p)))?;
        let mut assignments = RawAssignments::new();
        for (members, points) in rows {
            let coalition = Coalition::from_members(members.iter().map(|&p| PlayerId(p)))?;
            let mut raw = Vec::new();
            for point in *points {
                raw.push(PayoffVector::new(coalition, point.to_vec())?);
            }
            if assignments.insert(coalition, raw).is_some() {
                return Err(GameError::DuplicateCoalition(coalition));
            }
        }
        NTUGame::new(players, assignments)
    }

    pub fn players(&self) -> Coalition {
        self.players
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    /// Coalitions in ascending bit order, the canonical scan order.
    pub fn coalitions(&self) -> impl Iterator<Item = Coalition> + '_ {
        self.payoff_sets.keys().copied()
    }

    pub fn generator_set(&self, s: Coalition) -> Result<&GeneratorSet, GameError> {
        self.payoff_sets
            .get(&s)
            .ok_or(GameError::MissingCoalition(s))
    }

    pub fn grand_generators(&self) -> &GeneratorSet {
        self.payoff_sets
            .get(&self.players)
            .expect("grand coalition always present")
    }

    /// The subgame on `t`: same generator sets for every nonempty coalition
    /// inside `t`, player labels preserved.
    pub fn subgame(&self, t: Coalition) -> Result<NTUGame, GameError> {
        if t.is_empty() {
            return Err(GameError::EmptyCoalition);
        }
        if !t.is_subset_of(self.players) {
            return Err(GameError::NotASubset {
                subset: t,
                of: self.players,
            });
        }
        let payoff_sets = t
            .nonempty_subsets()
            .map(|s| (s, self.payoff_sets[&s].clone()))
            .collect();
        Ok(NTUGame {
            players: t,
            payoff_sets,
        })
    }

    /// The vector of singleton maxima `b_j`; after normalization each
    /// singleton's generator set is exactly one point.
    pub fn b_vector(&self) -> PayoffVector {
        let values = self
            .players
            .members()
            .map(|p| {
                let set = &self.payoff_sets[&Coalition::singleton(p)];
                debug_assert_eq!(set.generators().len(), 1);
                set.generators()[0].values()[0].clone()
            })
            .collect();
        PayoffVector::new(self.players, values).expect("dimension matches player set")
    }

    /// Rebuilds a game with one coalition's generator set replaced
    /// (re-normalized); used by the reduced-game and perturbation
    /// constructors.
    pub(crate) fn with_generator_set(
        &self,
        s: Coalition,
        raw: Vec<PayoffVector>,
    ) -> Result<NTUGame, GameError> {
        if !self.payoff_sets.contains_key(&s) {
            return Err(GameError::MissingCoalition(s));
        }
        let mut payoff_sets = self.payoff_sets.clone();
        payoff_sets.insert(s, GeneratorSet::normalize(s, raw)?);
        Ok(NTUGame {
            players: self.players,
            payoff_sets,
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("player set must be nonempty")]
    EmptyPlayerSet,
    #[error("coalitions must be nonempty")]
    EmptyCoalition,
    #[error("player {0} occurs twice")]
    DuplicatePlayer(PlayerId),
    #[error("player label {0} exceeds the supported range")]
    PlayerOutOfRange(PlayerId),
    #[error("no payoff set assigned to coalition {0}")]
    MissingCoalition(Coalition),
    #[error("coalition {0} assigned twice")]
    DuplicateCoalition(Coalition),
    #[error("coalition {coalition} is not a subset of the player set {players}")]
    ForeignCoalition {
        coalition: Coalition,
        players: Coalition,
    },
    #[error("empty generator set for coalition {0}")]
    EmptyGeneratorSet(Coalition),
    #[error("payoff vector for coalition {coalition} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        coalition: Coalition,
        expected: usize,
        got: usize,
    },
    #[error("generator indexed by {got} assigned to coalition {coalition}")]
    GeneratorCoalitionMismatch {
        coalition: Coalition,
        got: Coalition,
    },
    #[error("{subset} is not a subset of {of}")]
    NotASubset { subset: Coalition, of: Coalition },
}
