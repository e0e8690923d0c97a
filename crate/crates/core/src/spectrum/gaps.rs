//! Open intervals just above `1/6` that contain no liminf, and the
//! contraction-sum bound showing the spectrum is null on `[3/17, 1/3]`.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::exact::{rat, Interval, Rational, WordMap};
use crate::words::lyndon_words;

use super::periodic_liminf;

/// Longest period scanned by the empirical part of [`gap_checks`].
pub const DEFAULT_GAP_PERIOD_BOUND: usize = 10;

/// Quadruples `(a, b, c, d)` over `{2, 3, 4}` with no adjacent `(4, 2)`.
pub const ADMISSIBLE_QUADRUPLES: [[u32; 4]; 55] = [
    [2, 2, 2, 2], [2, 2, 2, 3], [2, 2, 2, 4], [2, 2, 3, 2], [2, 2, 3, 3], [2, 2, 3, 4], [2, 2, 4, 3], [2, 2, 4, 4],
    [2, 3, 2, 2], [2, 3, 2, 3], [2, 3, 2, 4], [2, 3, 3, 2], [2, 3, 3, 3], [2, 3, 3, 4], [2, 3, 4, 3], [2, 3, 4, 4],
    [2, 4, 3, 2], [2, 4, 3, 3], [2, 4, 3, 4], [2, 4, 4, 3], [2, 4, 4, 4], [3, 2, 2, 2], [3, 2, 2, 3], [3, 2, 2, 4],
    [3, 2, 3, 2], [3, 2, 3, 3], [3, 2, 3, 4], [3, 2, 4, 3], [3, 2, 4, 4], [3, 3, 2, 2], [3, 3, 2, 3], [3, 3, 2, 4],
    [3, 3, 3, 2], [3, 3, 3, 3], [3, 3, 3, 4], [3, 3, 4, 3], [3, 3, 4, 4], [3, 4, 3, 2], [3, 4, 3, 3], [3, 4, 3, 4],
    [3, 4, 4, 3], [3, 4, 4, 4], [4, 3, 2, 2], [4, 3, 2, 3], [4, 3, 2, 4], [4, 3, 3, 2], [4, 3, 3, 3], [4, 3, 3, 4],
    [4, 3, 4, 3], [4, 3, 4, 4], [4, 4, 3, 2], [4, 4, 3, 3], [4, 4, 3, 4], [4, 4, 4, 3], [4, 4, 4, 4],
];

fn pow4(n: usize) -> BigInt {
    BigInt::one() << (2 * n)
}

fn frac(num: i64, den: BigInt) -> Rational {
    Rational::new(BigInt::from(num), den)
}

/// The open gap `(1/6 + 1/(93·4ⁿ), 1/6 + 1/(84·4ⁿ))`, returned by its closure.
pub fn gap_interval(n: usize) -> Interval {
    let sixth = rat(1, 6);
    let lo = &sixth + frac(1, BigInt::from(93) * pow4(n));
    let hi = &sixth + frac(1, BigInt::from(84) * pow4(n));
    Interval::new(lo, hi).expect("1/93 < 1/84")
}

fn twos(count: usize) -> Vec<u32> {
    vec![2; count]
}

/// `T_4 ∘ T_2^{2N+1}(13/31)` and `T_4 ∘ T_2^{2N+2}(2/7)`: the lower end of
/// gap `N` and the upper end of gap `N + 1`.
fn gap_endpoints_by_maps(n: usize) -> Result<(Rational, Rational)> {
    let mut upper = vec![4];
    upper.extend(twos(2 * n + 1));
    let mut lower = vec![4];
    lower.extend(twos(2 * n + 2));
    Ok((
        WordMap::from_word(&upper)?.apply(&rat(13, 31)),
        WordMap::from_word(&lower)?.apply(&rat(2, 7)),
    ))
}

pub fn gap_checks(n_max: usize, period_bound: usize) -> Result<Certificate> {
    if period_bound == 0 {
        return Err(Error::input("period bound must be at least 1"));
    }
    let mut cert = Certificate::new("gaps");
    let core = Interval::new(rat(1, 7), rat(3, 7))?;
    let window = Interval::new(rat(1, 6), rat(1, 6) + rat(1, 84))?;
    cert.record("window", &window);
    for k in 2..=4u32 {
        for l in 2..=4u32 {
            if (k, l) == (4, 2) {
                continue;
            }
            let image = WordMap::from_word(&[k, l])?.map_interval(&core);
            cert.require(!image.meets_interior_of(&window), format!("T_{k}T_{l}([1/7,3/7]) misses window"), &image);
        }
    }

    for n in 0..=n_max {
        let (lo, hi) = gap_endpoints_by_maps(n)?;
        let lo_expected = gap_interval(n).lo().clone();
        let hi_expected = gap_interval(n + 1).hi().clone();
        cert.require(lo == lo_expected, format!("T_4 T_2^{} (13/31) = gap {n} lower end", 2 * n + 1), &lo);
        cert.require(hi == hi_expected, format!("T_4 T_2^{} (2/7) = gap {} upper end", 2 * n + 2, n + 1), &hi);
    }
    cert.record("gap 0", gap_interval(0));
    cert.record(format!("gap {n_max}"), gap_interval(n_max));

    let words = lyndon_words(&[2, 3, 4], period_bound);
    let gaps: Vec<Interval> = (0..=n_max).map(gap_interval).collect();
    let hits: Vec<(usize, Vec<u32>, Rational)> = words
        .par_iter()
        .filter_map(|w| {
            let v = periodic_liminf(w);
            gaps.iter().position(|g| g.contains_strictly(&v)).map(|n| (n, w.clone(), v))
        })
        .collect();
    cert.record("periodic words scanned", words.len());
    cert.record("period bound", period_bound);
    for (n, w, v) in hits.iter().take(5) {
        cert.require(false, format!("liminf of period {w:?} inside gap {n}"), v);
    }
    Ok(cert)
}

fn admissible(t: &[u32]) -> bool {
    t.windows(2).all(|p| p != [4, 2])
}

pub fn measure_zero_certificate() -> Certificate {
    let mut cert = Certificate::new("measure-zero");
    let mut enumerated = Vec::new();
    for a in 2..=4u32 {
        for b in 2..=4u32 {
            for c in 2..=4u32 {
                for d in 2..=4u32 {
                    if admissible(&[a, b, c, d]) {
                        enumerated.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    cert.record("count", enumerated.len());
    cert.require(enumerated.len() == 55, "count = 55", enumerated.len());
    let listed_ok = enumerated == ADMISSIBLE_QUADRUPLES;
    cert.require(listed_ok, "enumeration matches listed quadruples", enumerated.len());

    let sum: Rational = enumerated
        .iter()
        .map(|t| rat(1, t.iter().map(|&m| m as i64).product()))
        .sum();
    cert.require(sum < Rational::one(), "sum of contraction ratios < 1", &sum);
    cert.record("sum", &sum);

    let left_end = (2..=4u32)
        .map(|a| WordMap::from_word(&[4, 2, a]).and_then(|m| m.fixed_point()).expect("valid word"))
        .max()
        .expect("three digits");
    cert.record("max Fix(T_4 T_2 T_a)", &left_end);
    cert.require(left_end == rat(3, 17), "max Fix(T_4 T_2 T_a) = 3/17", &left_end);
    cert.note("interval [3/17, 1/3]: left end recomputed as max over a in {2,3,4} of Fix(T_4 T_2 T_a)");
    cert
}
