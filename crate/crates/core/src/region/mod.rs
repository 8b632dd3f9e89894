//! Exact region algebra over finite unions of axis-aligned boxes with
//! open/closed endpoints, and the game sets built on it: feasible, core,
//! Pareto and individually-rational regions, plus exact L-infinity
//! Hausdorff distance between comprehensive hulls.
//!
//! Canonical form is the maximal slab decomposition: sweeping the axes in
//! player order, a region splits exactly at the values where its
//! cross-section changes, and cross-sections are canonicalized
//! recursively. Two regions describe the same point set if and only if
//! their canonical box lists are identical, which makes equality, subset
//! and emptiness syntactic.

mod interval;

pub use interval::{grid_atoms, merge_intervals, Interval};

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::game::{Coalition, NTUGame, PayoffVector};
use crate::rational::{positive_part, Extended, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionError {
    #[error("player sets differ: {left} vs {right}")]
    PlayerSetMismatch { left: Coalition, right: Coalition },
    #[error("box has {got} intervals for player set {players}")]
    DimensionMismatch { players: Coalition, got: usize },
    #[error("extremum undefined over an empty region")]
    EmptyRegion,
    #[error("coalition {coalition} is not a nonempty subset of {players}")]
    BadCoalition {
        coalition: Coalition,
        players: Coalition,
    },
}

/// An axis-aligned box: one interval per player, in ascending label order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AxisBox {
    players: Coalition,
    intervals: Vec<Interval>,
}

impl AxisBox {
    pub fn new(players: Coalition, intervals: Vec<Interval>) -> Result<AxisBox, RegionError> {
        if intervals.len() != players.len() {
            return Err(RegionError::DimensionMismatch {
                players,
                got: intervals.len(),
            });
        }
        Ok(AxisBox { players, intervals })
    }

    pub fn full(players: Coalition) -> AxisBox {
        AxisBox {
            players,
            intervals: vec![Interval::full(); players.len()],
        }
    }

    pub fn point(x: &PayoffVector) -> AxisBox {
        AxisBox {
            players: x.coalition(),
            intervals: x.values().iter().cloned().map(Interval::point).collect(),
        }
    }

    /// The closed down-orthant of a generator: the box of payoffs it weakly
    /// dominates.
    pub fn down_closed(g: &PayoffVector) -> AxisBox {
        AxisBox {
            players: g.coalition(),
            intervals: g.values().iter().cloned().map(Interval::at_most).collect(),
        }
    }

    /// The closed up-set of a vector.
    pub fn up_closed(b: &PayoffVector) -> AxisBox {
        AxisBox {
            players: b.coalition(),
            intervals: b.values().iter().cloned().map(Interval::at_least).collect(),
        }
    }

    /// The open cylinder of payoffs strictly dominated by `g` for every
    /// member of its coalition; coordinates outside the coalition are
    /// unconstrained.
    pub fn open_down_cylinder(players: Coalition, g: &PayoffVector) -> AxisBox {
        let s = g.coalition();
        let intervals = players
            .members()
            .map(|p| match g.get(p) {
                Some(v) => Interval::below(v.clone()),
                None => Interval::full(),
            })
            .collect();
        debug_assert!(s.is_subset_of(players));
        AxisBox { players, intervals }
    }

    pub fn players(&self) -> Coalition {
        self.players
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, x: &PayoffVector) -> bool {
        debug_assert_eq!(x.coalition(), self.players);
        self.intervals
            .iter()
            .zip(x.values())
            .all(|(iv, v)| iv.contains(v))
    }

    pub fn intersect(&self, other: &AxisBox) -> Option<AxisBox> {
        debug_assert_eq!(self.players, other.players);
        let mut intervals = Vec::with_capacity(self.intervals.len());
        for (a, b) in self.intervals.iter().zip(&other.intervals) {
            intervals.push(a.intersect(b)?);
        }
        Some(AxisBox {
            players: self.players,
            intervals,
        })
    }

    /// `self` minus `cut` as disjoint boxes, carving axis by axis.
    pub fn carve(&self, cut: &AxisBox) -> Vec<AxisBox> {
        if self.intersect(cut).is_none() {
            return vec![self.clone()];
        }
        let mut pieces = Vec::new();
        let mut clipped: Vec<Interval> = Vec::with_capacity(self.intervals.len());
        for (i, (mine, theirs)) in self.intervals.iter().zip(&cut.intervals).enumerate() {
            let (below, above) = mine.subtract(theirs);
            for part in [below, above].into_iter().flatten() {
                let mut intervals = clipped.clone();
                intervals.push(part);
                intervals.extend(self.intervals[i + 1..].iter().cloned());
                pieces.push(AxisBox {
                    players: self.players,
                    intervals,
                });
            }
            clipped.push(mine.intersect(theirs).expect("boxes overlap"));
        }
        pieces
    }

    pub fn is_bounded(&self) -> bool {
        self.intervals.iter().all(Interval::is_bounded)
    }
}

impl fmt::Display for AxisBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// An exact point set: a canonical finite union of boxes over a fixed
/// player set. Structural equality coincides with point-set equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    players: Coalition,
    boxes: Vec<AxisBox>,
}

/// An exact infimum or supremum over a region, with attainment resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremum {
    pub value: Extended,
    pub attained: bool,
    /// Index of a box achieving the bound, for witness reconstruction.
    pub box_index: usize,
}

impl Region {
    pub fn empty(players: Coalition) -> Region {
        Region {
            players,
            boxes: Vec::new(),
        }
    }

    pub fn full(players: Coalition) -> Region {
        Region {
            players,
            boxes: vec![AxisBox::full(players)],
        }
    }

    pub fn point(x: &PayoffVector) -> Region {
        Region {
            players: x.coalition(),
            boxes: vec![AxisBox::point(x)],
        }
    }

    /// Canonicalizes an arbitrary box list into a region.
    pub fn from_boxes(players: Coalition, boxes: Vec<AxisBox>) -> Result<Region, RegionError> {
        for b in &boxes {
            if b.players() != players {
                return Err(RegionError::PlayerSetMismatch {
                    left: players,
                    right: b.players(),
                });
            }
        }
        Ok(Region {
            players,
            boxes: canonicalize(players, boxes),
        })
    }

    pub fn players(&self) -> Coalition {
        self.players
    }

    pub fn boxes(&self) -> &[AxisBox] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    fn check_players(&self, other: &Region) -> Result<(), RegionError> {
        if self.players != other.players {
            return Err(RegionError::PlayerSetMismatch {
                left: self.players,
                right: other.players,
            });
        }
        Ok(())
    }

    pub fn contains_point(&self, x: &PayoffVector) -> Result<bool, RegionError> {
        if x.coalition() != self.players {
            return Err(RegionError::PlayerSetMismatch {
                left: self.players,
                right: x.coalition(),
            });
        }
        Ok(self.boxes.iter().any(|b| b.contains(x)))
    }

    pub fn union(&self, other: &Region) -> Result<Region, RegionError> {
        self.check_players(other)?;
        let mut boxes = self.boxes.clone();
        boxes.extend(other.boxes.iter().cloned());
        Ok(Region {
            players: self.players,
            boxes: canonicalize(self.players, boxes),
        })
    }

    pub fn intersect(&self, other: &Region) -> Result<Region, RegionError> {
        self.check_players(other)?;
        let mut boxes = Vec::new();
        for a in &self.boxes {
            for b in &other.boxes {
                if let Some(c) = a.intersect(b) {
                    boxes.push(c);
                }
            }
        }
        Ok(Region {
            players: self.players,
            boxes: canonicalize(self.players, boxes),
        })
    }

    pub fn difference(&self, other: &Region) -> Result<Region, RegionError> {
        self.check_players(other)?;
        let boxes = carve_all(self.players, self.boxes.clone(), &other.boxes);
        Ok(Region {
            players: self.players,
            boxes: canonicalize(self.players, boxes),
        })
    }

    /// Complement relative to the whole payoff space.
    pub fn complement(&self) -> Region {
        let boxes = carve_all(
            self.players,
            vec![AxisBox::full(self.players)],
            &self.boxes,
        );
        Region {
            players: self.players,
            boxes: canonicalize(self.players, boxes),
        }
    }

    pub fn is_subset_of(&self, other: &Region) -> Result<bool, RegionError> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Representative points: for every box, every combination of attained
    /// endpoints and interior representatives per axis. Because canonical
    /// boxes never straddle a cross-section change, this hits every
    /// combinatorial face of the region at least once.
    pub fn sample_points(&self) -> Vec<PayoffVector> {
        let mut out = BTreeSet::new();
        for b in &self.boxes {
            let candidates: Vec<Vec<Rational>> = b
                .intervals()
                .iter()
                .map(|iv| {
                    let mut vals = vec![iv.representative()];
                    if let Some(v) = iv.attained_lower() {
                        vals.push(v.clone());
                    }
                    if let Some(v) = iv.attained_upper() {
                        vals.push(v.clone());
                    }
                    vals.sort();
                    vals.dedup();
                    vals
                })
                .collect();
            for values in cartesian(&candidates) {
                out.insert(
                    PayoffVector::new(self.players, values).expect("dimension matches"),
                );
            }
        }
        out.into_iter().collect()
    }

    /// Exact infimum of `max_{j in over} x_j` over the region. Per box the
    /// infimum is the largest of the restricted lower endpoints; it is
    /// attained when every axis achieving it is closed there.
    pub fn inf_max_coordinate(&self, over: Coalition) -> Result<Extremum, RegionError> {
        self.check_extremum_args(over)?;
        let mut best: Option<Extremum> = None;
        for (index, b) in self.boxes.iter().enumerate() {
            let mut bound = Extended::NegInf;
            for p in over.members() {
                let idx = self.players.member_index(p).expect("subset");
                let iv = &b.intervals()[idx];
                if *iv.lower() > bound {
                    bound = iv.lower().clone();
                }
            }
            let attained = bound.is_finite()
                && over.members().all(|p| {
                    let idx = self.players.member_index(p).expect("subset");
                    let iv = &b.intervals()[idx];
                    *iv.lower() != bound || iv.lower_closed()
                });
            let candidate = Extremum {
                value: bound,
                attained,
                box_index: index,
            };
            best = Some(match best {
                None => candidate,
                Some(cur) => pick_min(cur, candidate),
            });
        }
        best.ok_or(RegionError::EmptyRegion)
    }

    /// Exact supremum of `min_{j in over} x_j` over the region; the mirror
    /// of [`Region::inf_max_coordinate`].
    pub fn sup_min_coordinate(&self, over: Coalition) -> Result<Extremum, RegionError> {
        self.check_extremum_args(over)?;
        let mut best: Option<Extremum> = None;
        for (index, b) in self.boxes.iter().enumerate() {
            let mut bound = Extended::PosInf;
            for p in over.members() {
                let idx = self.players.member_index(p).expect("subset");
                let iv = &b.intervals()[idx];
                if *iv.upper() < bound {
                    bound = iv.upper().clone();
                }
            }
            let attained = bound.is_finite()
                && over.members().all(|p| {
                    let idx = self.players.member_index(p).expect("subset");
                    let iv = &b.intervals()[idx];
                    *iv.upper() != bound || iv.upper_closed()
                });
            let candidate = Extremum {
                value: bound,
                attained,
                box_index: index,
            };
            best = Some(match best {
                None => candidate,
                Some(cur) => pick_max(cur, candidate),
            });
        }
        best.ok_or(RegionError::EmptyRegion)
    }

    fn check_extremum_args(&self, over: Coalition) -> Result<(), RegionError> {
        if over.is_empty() || !over.is_subset_of(self.players) {
            return Err(RegionError::BadCoalition {
                coalition: over,
                players: self.players,
            });
        }
        Ok(())
    }

    /// A point of the region whose coordinates over `s` are all strictly
    /// below `t`, if one exists.
    pub fn point_with_coords_below(&self, s: Coalition, t: &Rational) -> Option<PayoffVector> {
        self.point_clipped(s, &Interval::below(t.clone()))
    }

    /// A point of the region whose coordinates over `s` are all strictly
    /// above `t`, if one exists.
    pub fn point_with_coords_above(&self, s: Coalition, t: &Rational) -> Option<PayoffVector> {
        self.point_clipped(s, &Interval::above(t.clone()))
    }

    fn point_clipped(&self, s: Coalition, clip: &Interval) -> Option<PayoffVector> {
        'boxes: for b in &self.boxes {
            let mut values = Vec::with_capacity(self.players.len());
            for (p, iv) in self.players.members().zip(b.intervals()) {
                if s.contains(p) {
                    match iv.intersect(clip) {
                        Some(piece) => values.push(piece.representative()),
                        None => continue 'boxes,
                    }
                } else {
                    values.push(iv.representative());
                }
            }
            return Some(PayoffVector::new(self.players, values).expect("dimension matches"));
        }
        None
    }

    pub fn is_bounded(&self) -> bool {
        self.boxes.iter().all(AxisBox::is_bounded)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.boxes.is_empty() {
            return write!(f, "(empty)");
        }
        for (k, b) in self.boxes.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

fn pick_min(a: Extremum, b: Extremum) -> Extremum {
    match a.value.cmp(&b.value) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        // Prefer an attained witness at the same value.
        std::cmp::Ordering::Equal => {
            if a.attained || !b.attained {
                a
            } else {
                b
            }
        }
    }
}

fn pick_max(a: Extremum, b: Extremum) -> Extremum {
    match a.value.cmp(&b.value) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if a.attained || !b.attained {
                a
            } else {
                b
            }
        }
    }
}

fn cartesian(candidates: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = vec![Vec::new()];
    for axis in candidates {
        let mut next = Vec::with_capacity(rows.len() * axis.len());
        for row in &rows {
            for v in axis {
                let mut r = row.clone();
                r.push(v.clone());
                next.push(r);
            }
        }
        rows = next;
    }
    rows
}

/// Subtracts every cut box from the fragments, coalescing periodically to
/// keep fragmentation in check.
fn carve_all(players: Coalition, mut fragments: Vec<AxisBox>, cuts: &[AxisBox]) -> Vec<AxisBox> {
    for cut in cuts {
        let mut next = Vec::with_capacity(fragments.len());
        for frag in &fragments {
            next.extend(frag.carve(cut));
        }
        fragments = next;
        if fragments.len() > 1024 {
            fragments = canonicalize(players, fragments);
        }
    }
    fragments
}

/// Maximal slab decomposition, unique for the point set (see the module
/// docs). Rows are recursively decomposed along the first axis at the
/// values where the cross-section changes; equal adjacent cross-sections
/// merge back into a single slab.
fn canonicalize(players: Coalition, boxes: Vec<AxisBox>) -> Vec<AxisBox> {
    let n = players.len();
    let rows: Vec<Vec<Interval>> = boxes.into_iter().map(|b| b.intervals).collect();
    canon_rows(n, rows)
        .into_iter()
        .map(|intervals| AxisBox { players, intervals })
        .collect()
}

fn canon_rows(n: usize, rows: Vec<Vec<Interval>>) -> Vec<Vec<Interval>> {
    if rows.is_empty() {
        return Vec::new();
    }
    if n == 1 {
        return merge_intervals(rows.into_iter().map(|mut r| r.pop().expect("1 axis")).collect())
            .into_iter()
            .map(|iv| vec![iv])
            .collect();
    }

    let mut values: BTreeSet<Rational> = BTreeSet::new();
    for r in &rows {
        if let Some(v) = r[0].lower().as_finite() {
            values.insert(v.clone());
        }
        if let Some(v) = r[0].upper().as_finite() {
            values.insert(v.clone());
        }
    }
    let values: Vec<Rational> = values.into_iter().collect();

    type Section = Rc<Vec<Vec<Interval>>>;
    let mut memo: HashMap<Vec<usize>, Section> = HashMap::new();
    let mut slabs: Vec<(usize, Interval, Section)> = Vec::new();
    for (idx, atom) in grid_atoms(&values).into_iter().enumerate() {
        let rep = atom.representative();
        let contributing: Vec<usize> = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r[0].contains(&rep))
            .map(|(i, _)| i)
            .collect();
        if contributing.is_empty() {
            continue;
        }
        let section = memo
            .entry(contributing)
            .or_insert_with_key(|key| {
                let sub = key.iter().map(|&i| rows[i][1..].to_vec()).collect();
                Rc::new(canon_rows(n - 1, sub))
            })
            .clone();
        if section.is_empty() {
            continue;
        }
        slabs.push((idx, atom, section));
    }

    let mut out: Vec<Vec<Interval>> = Vec::new();
    let mut run: Option<(usize, Interval, Section)> = None;
    for (idx, atom, section) in slabs {
        run = Some(match run.take() {
            Some((last_idx, merged, cur_section))
                if last_idx + 1 == idx
                    && (Rc::ptr_eq(&cur_section, &section) || *cur_section == *section) =>
            {
                let widened = Interval::new(
                    merged.lower().clone(),
                    merged.lower_closed(),
                    atom.upper().clone(),
                    atom.upper_closed(),
                )
                .expect("consecutive atoms merge");
                (idx, widened, cur_section)
            }
            prev => {
                if let Some((_, interval, section)) = prev {
                    emit_slab(&mut out, interval, &section);
                }
                (idx, atom, section)
            }
        });
    }
    if let Some((_, interval, section)) = run {
        emit_slab(&mut out, interval, &section);
    }
    out
}

fn emit_slab(out: &mut Vec<Vec<Interval>>, interval: Interval, section: &[Vec<Interval>]) {
    for sub in section {
        let mut row = Vec::with_capacity(1 + sub.len());
        row.push(interval.clone());
        row.extend(sub.iter().cloned());
        out.push(row);
    }
}

/// The grand coalition's payoff set as a region: the union of the
/// generators' closed down-orthants.
pub fn feasible_region(game: &NTUGame) -> Region {
    hull_region(game.players(), game.grand_generators().generators())
}

/// The downward hull of a coalition's generator set, as a region over that
/// coalition's own payoff space.
pub fn coalition_hull_region(game: &NTUGame, s: Coalition) -> Result<Region, RegionError> {
    let set = game
        .generator_set(s)
        .map_err(|_| RegionError::BadCoalition {
            coalition: s,
            players: game.players(),
        })?;
    Ok(hull_region(s, set.generators()))
}

fn hull_region(players: Coalition, generators: &[PayoffVector]) -> Region {
    let boxes = generators.iter().map(AxisBox::down_closed).collect();
    Region {
        players,
        boxes: canonicalize(players, boxes),
    }
}

/// The core as a region: feasible payoffs minus every coalition's open
/// domination cylinders.
pub fn core_region(game: &NTUGame) -> Region {
    carve_cylinders(game, false)
}

/// The weak-Pareto set: feasible payoffs minus the grand coalition's own
/// domination cylinders.
pub fn pareto_region(game: &NTUGame) -> Region {
    carve_cylinders(game, true)
}

fn carve_cylinders(game: &NTUGame, grand_only: bool) -> Region {
    let players = game.players();
    let mut cuts: Vec<AxisBox> = Vec::new();
    if grand_only {
        for g in game.grand_generators().generators() {
            cuts.push(AxisBox::open_down_cylinder(players, g));
        }
    } else {
        // Cylinders constraining fewer axes carve off bigger chunks with
        // less fragmentation; take them first.
        let mut coalitions: Vec<Coalition> = game.coalitions().collect();
        coalitions.sort_by_key(|s| (s.len(), s.bits()));
        for s in coalitions {
            for g in game.generator_set(s).expect("present").generators() {
                cuts.push(AxisBox::open_down_cylinder(players, g));
            }
        }
    }
    let fragments = carve_all(players, feasible_region(game).boxes, &cuts);
    Region {
        players,
        boxes: canonicalize(players, fragments),
    }
}

/// The individually rational set: feasible payoffs at or above the
/// singleton maxima. Always bounded for finitely-generated games.
pub fn ir_region(game: &NTUGame) -> Region {
    let players = game.players();
    let up = AxisBox::up_closed(&game.b_vector());
    let boxes = feasible_region(game)
        .boxes
        .iter()
        .filter_map(|b| b.intersect(&up))
        .collect();
    Region {
        players,
        boxes: canonicalize(players, boxes),
    }
}

/// Exact L-infinity Hausdorff distance between the grand-coalition hulls
/// of two games over the same players.
///
/// The distance from a point to a downward hull is componentwise monotone,
/// so the supremum over a hull is attained at a generator; each directed
/// distance is therefore a finite max-min over the two generator sets.
pub fn hausdorff_linf(a: &NTUGame, b: &NTUGame) -> Result<Rational, RegionError> {
    if a.players() != b.players() {
        return Err(RegionError::PlayerSetMismatch {
            left: a.players(),
            right: b.players(),
        });
    }
    let ga = a.grand_generators().generators();
    let gb = b.grand_generators().generators();
    Ok(crate::rational::rational_max(
        &directed_linf(ga, gb),
        &directed_linf(gb, ga),
    ))
}

fn directed_linf(from: &[PayoffVector], to: &[PayoffVector]) -> Rational {
    use num_traits::Zero;
    let mut worst = Rational::zero();
    for g in from {
        let mut best: Option<Rational> = None;
        for h in to {
            let dist = g
                .values()
                .iter()
                .zip(h.values())
                .map(|(gi, hi)| positive_part(gi - hi))
                .max()
                .expect("nonempty vectors");
            best = Some(match best {
                Some(cur) if cur <= dist => cur,
                _ => dist,
            });
        }
        let best = best.expect("nonempty generator set");
        if best > worst {
            worst = best;
        }
    }
    worst
}
