//! One-dimensional intervals over extended rationals with open/closed
//! endpoints; the building block of box regions.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{Extended, Rational};

/// A nonempty interval. Valid states: `lower < upper`, or a degenerate
/// point with both endpoints closed. Infinite endpoints are always open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lower: Extended,
    lower_closed: bool,
    upper: Extended,
    upper_closed: bool,
}

impl Interval {
    /// Builds an interval, returning `None` when the endpoints describe the
    /// empty set. Closed flags on infinite endpoints are ignored.
    pub fn new(
        lower: Extended,
        lower_closed: bool,
        upper: Extended,
        upper_closed: bool,
    ) -> Option<Interval> {
        let lower_closed = lower_closed && lower.is_finite();
        let upper_closed = upper_closed && upper.is_finite();
        let nonempty = match lower.cmp(&upper) {
            Ordering::Less => true,
            Ordering::Equal => lower_closed && upper_closed,
            Ordering::Greater => false,
        };
        if !nonempty || lower == Extended::PosInf || upper == Extended::NegInf {
            return None;
        }
        Some(Interval {
            lower,
            lower_closed,
            upper,
            upper_closed,
        })
    }

    pub fn full() -> Interval {
        Interval {
            lower: Extended::NegInf,
            lower_closed: false,
            upper: Extended::PosInf,
            upper_closed: false,
        }
    }

    pub fn point(v: Rational) -> Interval {
        Interval {
            lower: Extended::Finite(v.clone()),
            lower_closed: true,
            upper: Extended::Finite(v),
            upper_closed: true,
        }
    }

    pub fn closed(a: Rational, b: Rational) -> Option<Interval> {
        Interval::new(Extended::Finite(a), true, Extended::Finite(b), true)
    }

    pub fn open(a: Rational, b: Rational) -> Option<Interval> {
        Interval::new(Extended::Finite(a), false, Extended::Finite(b), false)
    }

    /// `(-inf, b]`
    pub fn at_most(b: Rational) -> Interval {
        Interval::new(Extended::NegInf, false, Extended::Finite(b), true).expect("nonempty")
    }

    /// `(-inf, b)`
    pub fn below(b: Rational) -> Interval {
        Interval::new(Extended::NegInf, false, Extended::Finite(b), false).expect("nonempty")
    }

    /// `[a, +inf)`
    pub fn at_least(a: Rational) -> Interval {
        Interval::new(Extended::Finite(a), true, Extended::PosInf, false).expect("nonempty")
    }

    /// `(a, +inf)`
    pub fn above(a: Rational) -> Interval {
        Interval::new(Extended::Finite(a), false, Extended::PosInf, false).expect("nonempty")
    }

    pub fn lower(&self) -> &Extended {
        &self.lower
    }

    pub fn lower_closed(&self) -> bool {
        self.lower_closed
    }

    pub fn upper(&self) -> &Extended {
        &self.upper
    }

    pub fn upper_closed(&self) -> bool {
        self.upper_closed
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        let v = Extended::Finite(v.clone());
        let above_lower = match self.lower.cmp(&v) {
            Ordering::Less => true,
            Ordering::Equal => self.lower_closed,
            Ordering::Greater => false,
        };
        let below_upper = match v.cmp(&self.upper) {
            Ordering::Less => true,
            Ordering::Equal => self.upper_closed,
            Ordering::Greater => false,
        };
        above_lower && below_upper
    }

    /// Key ordering lower bounds by where the interval begins on the line:
    /// a closed bound starts at the value, an open one just after it.
    fn lower_key(&self) -> (&Extended, u8) {
        (&self.lower, if self.lower_closed { 0 } else { 1 })
    }

    /// Key ordering upper bounds by where the interval ends: an open bound
    /// ends at the value, a closed one just after it.
    fn upper_key(&self) -> (&Extended, u8) {
        (&self.upper, if self.upper_closed { 1 } else { 0 })
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lower, lower_closed) = if self.lower_key() >= other.lower_key() {
            (self.lower.clone(), self.lower_closed)
        } else {
            (other.lower.clone(), other.lower_closed)
        };
        let (upper, upper_closed) = if self.upper_key() <= other.upper_key() {
            (self.upper.clone(), self.upper_closed)
        } else {
            (other.upper.clone(), other.upper_closed)
        };
        Interval::new(lower, lower_closed, upper, upper_closed)
    }

    /// The parts of `self` strictly below and strictly above `other`, i.e.
    /// `self` minus `other` as at most two pieces.
    pub fn subtract(&self, other: &Interval) -> (Option<Interval>, Option<Interval>) {
        let below = match &other.lower {
            Extended::NegInf => None,
            bound => Interval::new(
                Extended::NegInf,
                false,
                bound.clone(),
                !other.lower_closed,
            )
            .and_then(|half| self.intersect(&half)),
        };
        let above = match &other.upper {
            Extended::PosInf => None,
            bound => Interval::new(
                bound.clone(),
                !other.upper_closed,
                Extended::PosInf,
                false,
            )
            .and_then(|half| self.intersect(&half)),
        };
        (below, above)
    }

    /// True when the union of `self` and `next` is a single interval,
    /// assuming `self` begins no later than `next`.
    fn merges_with(&self, next: &Interval) -> bool {
        match next.lower.cmp(&self.upper) {
            Ordering::Less => true,
            Ordering::Equal => next.lower_closed || self.upper_closed,
            Ordering::Greater => false,
        }
    }

    /// A point inside the interval, preferring the midpoint; unbounded ends
    /// fall back to a unit offset from the finite side.
    pub fn representative(&self) -> Rational {
        match (&self.lower, &self.upper) {
            (Extended::Finite(a), Extended::Finite(b)) => {
                (a + b) / (Rational::one() + Rational::one())
            }
            (Extended::NegInf, Extended::Finite(b)) => b - Rational::one(),
            (Extended::Finite(a), Extended::PosInf) => a + Rational::one(),
            (Extended::NegInf, Extended::PosInf) => Rational::zero(),
            _ => unreachable!("invalid interval"),
        }
    }

    /// The lower endpoint when it is actually a member of the interval.
    pub fn attained_lower(&self) -> Option<&Rational> {
        if self.lower_closed {
            self.lower.as_finite()
        } else {
            None
        }
    }

    pub fn attained_upper(&self) -> Option<&Rational> {
        if self.upper_closed {
            self.upper.as_finite()
        } else {
            None
        }
    }

}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lower_key()
            .cmp(&other.lower_key())
            .then_with(|| self.upper_key().cmp(&other.upper_key()))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lower_closed { "[" } else { "(" },
            self.lower,
            self.upper,
            if self.upper_closed { "]" } else { ")" },
        )
    }
}

/// Minimal sorted disjoint form of a set of intervals: overlapping or
/// touching intervals are merged.
pub fn merge_intervals(mut intervals: Vec<Interval>) -> Vec<Interval> {
    intervals.sort();
    let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
    for iv in intervals {
        match merged.last_mut() {
            Some(last) if last.merges_with(&iv) => {
                if iv.upper_key() > last.upper_key() {
                    last.upper = iv.upper;
                    last.upper_closed = iv.upper_closed;
                }
            }
            _ => merged.push(iv),
        }
    }
    merged
}

/// The atomic intervals of the grid spanned by `values`: alternating open
/// gaps and point intervals covering the whole line.
pub fn grid_atoms(values: &[Rational]) -> Vec<Interval> {
    if values.is_empty() {
        return vec![Interval::full()];
    }
    let mut atoms = Vec::with_capacity(2 * values.len() + 1);
    atoms.push(Interval::below(values[0].clone()));
    for (i, v) in values.iter().enumerate() {
        atoms.push(Interval::point(v.clone()));
        match values.get(i + 1) {
            Some(next) => {
                atoms.push(Interval::open(v.clone(), next.clone()).expect("sorted distinct"))
            }
            None => atoms.push(
                Interval::new(
                    Extended::Finite(v.clone()),
                    false,
                    Extended::PosInf,
                    false,
                )
                .expect("nonempty"),
            ),
        }
    }
    atoms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn ivc(a: i64, b: i64) -> Interval {
        Interval::closed(rat_int(a), rat_int(b)).unwrap()
    }

    #[test]
    fn rejects_empty() {
        assert!(Interval::closed(rat_int(1), rat_int(0)).is_none());
        assert!(Interval::open(rat_int(1), rat_int(1)).is_none());
        assert!(Interval::new(
            Extended::Finite(rat_int(1)),
            true,
            Extended::Finite(rat_int(1)),
            false
        )
        .is_none());
    }

    #[test]
    fn infinite_endpoints_never_closed() {
        let iv = Interval::new(Extended::NegInf, true, Extended::Finite(rat_int(0)), true)
            .unwrap();
        assert!(!iv.lower_closed());
    }

    #[test]
    fn membership_respects_flags() {
        let iv = Interval::new(
            Extended::Finite(rat_int(0)),
            false,
            Extended::Finite(rat_int(1)),
            true,
        )
        .unwrap();
        assert!(!iv.contains(&rat_int(0)));
        assert!(iv.contains(&rat(1, 2)));
        assert!(iv.contains(&rat_int(1)));
        assert!(!iv.contains(&rat_int(2)));
    }

    #[test]
    fn intersection() {
        let a = ivc(0, 2);
        let b = Interval::open(rat_int(1), rat_int(3)).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.to_string(), "(1, 2]");
        assert!(ivc(0, 1).intersect(&ivc(2, 3)).is_none());
        // Touching closed endpoints leave a point.
        assert_eq!(ivc(0, 1).intersect(&ivc(1, 2)).unwrap(), Interval::point(rat_int(1)));
        // One open endpoint kills the touch.
        assert!(Interval::open(rat_int(0), rat_int(1))
            .unwrap()
            .intersect(&ivc(1, 2))
            .is_none());
    }

    #[test]
    fn subtraction_pieces() {
        let a = ivc(0, 3);
        let b = ivc(1, 2);
        let (below, above) = a.subtract(&b);
        assert_eq!(below.unwrap().to_string(), "[0, 1)");
        assert_eq!(above.unwrap().to_string(), "(2, 3]");

        let (below, above) = a.subtract(&Interval::open(rat_int(1), rat_int(2)).unwrap());
        assert_eq!(below.unwrap().to_string(), "[0, 1]");
        assert_eq!(above.unwrap().to_string(), "[2, 3]");

        let (below, above) = a.subtract(&Interval::full());
        assert!(below.is_none() && above.is_none());

        let (below, above) = ivc(0, 1).subtract(&ivc(5, 6));
        assert_eq!(below.unwrap(), ivc(0, 1));
        assert!(above.is_none());
    }

    #[test]
    fn merging() {
        let merged = merge_intervals(vec![ivc(1, 2), ivc(0, 1)]);
        assert_eq!(merged, vec![ivc(0, 2)]);

        // Open endpoints meeting at a value do not merge.
        let merged = merge_intervals(vec![
            Interval::open(rat_int(0), rat_int(1)).unwrap(),
            Interval::open(rat_int(1), rat_int(2)).unwrap(),
        ]);
        assert_eq!(merged.len(), 2);

        // A point plugs the gap.
        let merged = merge_intervals(vec![
            Interval::open(rat_int(0), rat_int(1)).unwrap(),
            Interval::point(rat_int(1)),
            Interval::open(rat_int(1), rat_int(2)).unwrap(),
        ]);
        assert_eq!(merged, vec![Interval::open(rat_int(0), rat_int(2)).unwrap()]);

        let merged = merge_intervals(vec![ivc(0, 5), ivc(1, 2)]);
        assert_eq!(merged, vec![ivc(0, 5)]);
    }

    #[test]
    fn atoms_tile_the_line() {
        let atoms = grid_atoms(&[rat_int(0), rat_int(1)]);
        let rendered: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
        assert_eq!(
            rendered,
            vec!["(-inf, 0)", "[0, 0]", "(0, 1)", "[1, 1]", "(1, inf)"]
        );
        assert_eq!(merge_intervals(atoms), vec![Interval::full()]);
    }

    #[test]
    fn representatives_are_members() {
        let cases = vec![
            Interval::full(),
            ivc(0, 1),
            Interval::open(rat_int(0), rat_int(1)).unwrap(),
            Interval::at_most(rat_int(3)),
            Interval::at_least(rat(-1, 2)),
            Interval::point(rat(2, 3)),
        ];
        for iv in cases {
            assert!(iv.contains(&iv.representative()), "{iv}");
        }
    }

}
