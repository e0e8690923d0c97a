//! Exact scalars, closed intervals and affine maps.
//!
//! Nothing in here touches floating point. Decimal strings produced by
//! [`to_decimal`] are truncated toward zero and meant for display only.

mod affine;
mod interval;
mod rational;

pub use affine::{AffineMap, WordMap};
pub use interval::{Interval, IntervalOrder};
pub use rational::{int, parse_rational, rat, to_decimal, Rational};
