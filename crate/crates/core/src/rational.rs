//! Exact rational scalars and their extension with the two infinities.
//!
//! Every payoff coordinate, interval endpoint and distance in this crate is
//! a [`Rational`]. Floating point never appears: the boundary cases the
//! toolkit cares about (weak versus strict domination on level boundaries)
//! are exactly the ones floats would corrupt.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` used pervasively in tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer in rational literal {0:?}")]
    BadInteger(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p"` or `"p/q"` with optional sign, reducing to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let bad = || ParseRationalError::BadInteger(s.to_string());
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Canonical text form: `"p"` when the denominator is one, else `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational extended with `-inf` and `+inf`; the endpoint domain of
/// interval arithmetic. Ordering puts `NegInf` below every finite value and
/// `PosInf` above.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Extended {
    pub fn finite(r: Rational) -> Self {
        Extended::Finite(r)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl From<Rational> for Extended {
    fn from(r: Rational) -> Self {
        Extended::Finite(r)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => write!(f, "-inf"),
            Extended::Finite(r) => write!(f, "{}", format_rational(r)),
            Extended::PosInf => write!(f, "inf"),
        }
    }
}

/// Max of two rationals by value (cloning the larger).
pub fn rational_max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// `max(0, a)`, the positive part used by directed L-infinity distances.
pub fn positive_part(a: Rational) -> Rational {
    if a.is_negative() {
        Rational::zero()
    } else {
        a
    }
}
