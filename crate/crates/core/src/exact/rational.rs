use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator. `Display` renders `p/q`, or just `p` when `q == 1`.
pub type Rational = BigRational;

/// Shorthand for the rational `p/q`. Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` (whitespace around the parts is ignored).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::input(format!("cannot parse rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::input(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Decimal expansion truncated toward zero after `digits` fractional digits.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    let negative = value.is_negative();
    let num = value.numer().abs();
    let den = value.denom();
    let (whole, mut rem) = num.div_rem(den);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        out.push('.');
        let ten = BigInt::from(10);
        for _ in 0..digits {
            rem *= &ten;
            let (d, r) = rem.div_rem(den);
            out.push_str(&d.to_string());
            rem = r;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(rat(6, 3).to_string(), "2");
        assert_eq!(rat(-2, 4).to_string(), "-1/2");
        assert_eq!(rat(3, -9).to_string(), "-1/3");
    }

    #[test]
    fn canonical_form() {
        let r = rat(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(1, 3) + rat(1, 6), rat(1, 2));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("19759/20736").unwrap(), rat(19759, 20736));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn decimal_truncates_toward_zero() {
        assert_eq!(to_decimal(&rat(2, 3), 4), "0.6666");
        assert_eq!(to_decimal(&rat(-2, 3), 3), "-0.666");
        assert_eq!(to_decimal(&rat(19759, 20736), 4), "0.9528");
        assert_eq!(to_decimal(&int(5), 0), "5");
    }
}
