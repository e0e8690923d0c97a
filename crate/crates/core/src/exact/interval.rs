use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

/// Relative position of two intervals under the strict order
/// `[a, b] ≺ [c, d] ⇔ b < c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalOrder {
    pub precedes: bool,
    /// `[b, c]` when `[a, b] ≺ [c, d]`.
    pub gap: Option<Interval>,
    /// Set distance; zero when the intervals meet.
    pub distance: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::input(format!("interval endpoints out of order: [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// Builds the hull of two endpoints given in either order.
    pub fn spanning(a: Rational, b: Rational) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// True when `x` lies in the open interval `(lo, hi)`.
    pub fn contains_strictly(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Closed intervals intersect when they share at least one point.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Whether this closed interval meets the open interval `(other.lo, other.hi)`.
    pub fn meets_interior_of(&self, other: &Interval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        if !self.intersects(other) {
            return None;
        }
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        Some(Interval { lo: lo.clone(), hi: hi.clone() })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        let lo = if self.lo <= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi >= other.hi { &self.hi } else { &other.hi };
        Interval { lo: lo.clone(), hi: hi.clone() }
    }

    pub fn precedes(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn order(&self, other: &Interval) -> IntervalOrder {
        let precedes = self.precedes(other);
        let gap = precedes.then(|| Interval { lo: self.hi.clone(), hi: other.lo.clone() });
        let distance = if precedes {
            &other.lo - &self.hi
        } else if other.precedes(self) {
            &self.lo - &other.hi
        } else {
            Rational::zero()
        };
        IntervalOrder { precedes, gap, distance }
    }

    /// Sorts by left endpoint and fuses intervals that share a point.
    pub fn merge_all(mut pieces: Vec<Interval>) -> Vec<Interval> {
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut merged: Vec<Interval> = Vec::with_capacity(pieces.len());
        for piece in pieces {
            match merged.last_mut() {
                Some(last) if piece.lo <= last.hi => {
                    if piece.hi > last.hi {
                        last.hi = piece.hi;
                    }
                }
                _ => merged.push(piece),
            }
        }
        merged
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Interval", 2)?;
        s.serialize_field("lo", &self.lo.to_string())?;
        s.serialize_field("hi", &self.hi.to_string())?;
        s.end()
    }
}
