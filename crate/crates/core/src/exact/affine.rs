use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Interval, Rational};
use crate::error::{Error, Result};

/// The affine map `x ↦ offset + slope·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    offset: Rational,
    slope: Rational,
}

impl AffineMap {
    pub fn new(offset: Rational, slope: Rational) -> Self {
        AffineMap { offset, slope }
    }

    pub fn identity() -> Self {
        AffineMap::new(Rational::zero(), Rational::one())
    }

    /// `T_m(x) = (1 - x)/m`.
    pub fn digit(m: u32) -> Result<Self> {
        check_digit(m)?;
        let inv = Rational::new(BigInt::one(), BigInt::from(m));
        Ok(AffineMap::new(inv.clone(), -inv))
    }

    /// `T_{i_1} ∘ ⋯ ∘ T_{i_n}`; the empty word gives the identity.
    pub fn word(digits: &[u32]) -> Result<Self> {
        Ok(WordMap::from_word(digits)?.to_affine())
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn is_contraction(&self) -> bool {
        self.slope.abs() < Rational::one()
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.offset + &self.slope * x
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap::new(&self.offset + &self.slope * &inner.offset, &self.slope * &inner.slope)
    }

    pub fn fixed_point(&self) -> Result<Rational> {
        if !self.is_contraction() {
            return Err(Error::NotContraction(self.slope.clone()));
        }
        Ok(&self.offset / (Rational::one() - &self.slope))
    }

    /// Exact image; endpoints swap when the slope is negative.
    pub fn map_interval(&self, interval: &Interval) -> Interval {
        Interval::spanning(self.apply(interval.lo()), self.apply(interval.hi()))
    }
}

pub(crate) fn check_digit(m: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::input(format!("digit {m} is below 2")));
    }
    Ok(())
}

/// Integer form of a composition of digit maps,
/// `x ↦ (offset + sign·x) / scale` with `scale > 0` and `sign = ±1`.
///
/// For a word `(i_1, …, i_n)` the scale is `i_1⋯i_n` and the sign is
/// `(-1)^n`, so compositions need no gcd work at all. Long words are
/// folded with a balanced product tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordMap {
    offset: BigInt,
    scale: BigInt,
    negative: bool,
}

impl WordMap {
    pub fn identity() -> Self {
        WordMap { offset: BigInt::zero(), scale: BigInt::one(), negative: false }
    }

    pub fn digit(m: u32) -> Result<Self> {
        check_digit(m)?;
        Ok(WordMap { offset: BigInt::one(), scale: BigInt::from(m), negative: true })
    }

    pub fn from_word(digits: &[u32]) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&m| m < 2) {
            return Err(Error::input(format!("digit {bad} is below 2")));
        }
        Ok(Self::fold(digits))
    }

    fn fold(digits: &[u32]) -> Self {
        match digits.len() {
            0 => Self::identity(),
            1 => WordMap { offset: BigInt::one(), scale: BigInt::from(digits[0]), negative: true },
            n => {
                let (left, right) = digits.split_at(n / 2);
                Self::fold(left).compose(&Self::fold(right))
            }
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &WordMap) -> WordMap {
        let carried = if self.negative { -&inner.offset } else { inner.offset.clone() };
        WordMap {
            offset: &self.offset * &inner.scale + carried,
            scale: &self.scale * &inner.scale,
            negative: self.negative != inner.negative,
        }
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    /// True when the map reverses orientation (odd word length).
    pub fn is_reversing(&self) -> bool {
        self.negative
    }

    /// Fixed point as an unreduced pair `(numerator, denominator)` with
    /// denominator `scale ∓ 1 > 0`. Requires `scale >= 2`.
    pub fn fixed_point_parts(&self) -> (BigInt, BigInt) {
        let den = if self.negative { &self.scale + 1u32 } else { &self.scale - 1u32 };
        (self.offset.clone(), den)
    }

    pub fn fixed_point(&self) -> Result<Rational> {
        if self.scale <= BigInt::one() {
            return Err(Error::NotContraction(Rational::one()));
        }
        let (num, den) = self.fixed_point_parts();
        Ok(Rational::new(num, den))
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        let signed = if self.negative { -x } else { x.clone() };
        (Rational::from_integer(self.offset.clone()) + signed) / Rational::from_integer(self.scale.clone())
    }

    pub fn map_interval(&self, interval: &Interval) -> Interval {
        Interval::spanning(self.apply(interval.lo()), self.apply(interval.hi()))
    }

    pub fn to_affine(&self) -> AffineMap {
        let offset = Rational::new(self.offset.clone(), self.scale.clone());
        let magnitude = Rational::new(BigInt::one(), self.scale.clone());
        AffineMap::new(offset, if self.negative { -magnitude } else { magnitude })
    }
}
