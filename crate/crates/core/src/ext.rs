//! Integers extended by `-inf` and `+inf`.
//!
//! The lamp statistics `m` and `M` take the values `+inf` and `-inf` when no
//! lamp qualifies, and the distance and horofunction formulas feed them
//! through `min`, `max` and `+ 1`. All of that arithmetic lives here.

use std::cmp::Ordering;
use std::fmt;

/// An element of `Z ∪ {-inf, +inf}`.
///
/// The derived ordering follows variant order, so `NegInf < Finite(_) < PosInf`
/// and finite values compare numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub const fn finite(v: i64) -> Self {
        ExtInt::Finite(v)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    pub fn as_finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// `self + 1`, with `±inf + 1 = ±inf`.
    ///
    /// Panics if a finite value is `i64::MAX`.
    pub fn succ(self) -> Self {
        self.offset(1)
    }

    /// `self + k` for finite `k`; infinities absorb.
    pub fn offset(self, k: i64) -> Self {
        match self {
            ExtInt::Finite(v) => ExtInt::Finite(v.checked_add(k).expect("ExtInt offset overflow")),
            inf => inf,
        }
    }

    /// Minimum over a nonempty collection.
    pub fn min_of<I: IntoIterator<Item = ExtInt>>(it: I) -> ExtInt {
        it.into_iter().min().expect("min over an empty collection")
    }

    /// Maximum over a nonempty collection.
    pub fn max_of<I: IntoIterator<Item = ExtInt>>(it: I) -> ExtInt {
        it.into_iter().max().expect("max over an empty collection")
    }

    /// Unwraps a value that must be finite because a finite term took part in
    /// the min/max that produced it.
    pub(crate) fn expect_finite(self) -> i64 {
        match self {
            ExtInt::Finite(v) => v,
            other => panic!("expected a finite value, found {other}"),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl PartialEq<i64> for ExtInt {
    fn eq(&self, other: &i64) -> bool {
        *self == ExtInt::Finite(*other)
    }
}

impl PartialOrd<i64> for ExtInt {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&ExtInt::Finite(*other)))
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => f.write_str("-inf"),
            ExtInt::PosInf => f.write_str("+inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl std::str::FromStr for ExtInt {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.trim() {
            "+inf" | "inf" => Ok(ExtInt::PosInf),
            "-inf" => Ok(ExtInt::NegInf),
            t => t
                .parse::<i64>()
                .map(ExtInt::Finite)
                .map_err(|e| crate::Error::parse(0, format!("bad extended integer {t:?}: {e}"))),
        }
    }
}

impl std::ops::Neg for ExtInt {
    type Output = ExtInt;

    fn neg(self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::PosInf => ExtInt::NegInf,
            ExtInt::Finite(v) => ExtInt::Finite(-v),
        }
    }
}

/// Finite values as JSON numbers, infinities as `"+inf"` and `"-inf"`.
impl serde::Serialize for ExtInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Finite(v) => s.serialize_i64(*v),
            _ => s.collect_str(self),
        }
    }
}
