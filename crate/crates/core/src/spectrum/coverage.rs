//! Explicit sequences realising any `x ∈ (0, 1/7)` as a liminf.
//!
//! Write `x = T_m(y)` with `m >= 6` and `y ∈ [1/7, 3/7]`, expand
//! `y = Π(K_1, K_2, …)` greedily over `{2, 3, 4}`, and emit blocks
//! `(3, K_n, K_{n-1}, …, K_1, m)` for `n = 1, 2, …`. The digit `m` then
//! sits exactly at the indices `(n² + 5n)/2`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::exact::{int, rat, Interval, Rational};

const RESET_DIGIT: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageWitness {
    pub x: Rational,
    pub m: u32,
    /// `1 - m·x`.
    pub y: Rational,
    pub preperiod: Vec<u32>,
    pub period: Vec<u32>,
    /// `z_1 = y, z_{i+1} = 1 - K_i z_i` over one preperiod plus one period.
    pub orbit: Vec<Rational>,
}

/// `(n² + 5n)/2`, the position of the `n`-th occurrence of `m`.
pub fn designated_index(n: usize) -> usize {
    (n * n + 5 * n) / 2
}

fn core_interval() -> Interval {
    Interval::new(rat(1, 7), rat(3, 7)).expect("ordered")
}

pub fn coverage_witness(x: &Rational) -> Result<CoverageWitness> {
    if !(x.is_positive() && x < &rat(1, 7)) {
        return Err(Error::input(format!("x = {x} is outside (0, 1/7)")));
    }
    let core = core_interval();
    // m = max(6, ceil(4/(7x)))
    let lower = rat(4, 7) / x;
    let m_big: BigInt = lower.ceil().to_integer();
    let m = m_big.max(BigInt::from(6));
    let m: u32 = u32::try_from(&m).map_err(|_| Error::input(format!("x = {x} needs a digit m beyond u32")))?;
    let y = int(1) - int(m as i64) * x;
    debug_assert!(core.contains(&y));

    let mut seen: HashMap<Rational, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut orbit = Vec::new();
    let mut z = y.clone();
    let start = loop {
        if let Some(&first) = seen.get(&z) {
            break first;
        }
        seen.insert(z.clone(), orbit.len());
        let k = (2..=4u32)
            .find(|&k| core.contains(&(int(1) - int(k as i64) * &z)))
            .ok_or_else(|| Error::Domain(format!("no digit in {{2,3,4}} continues the orbit at {z}")))?;
        orbit.push(z.clone());
        digits.push(k);
        z = int(1) - int(k as i64) * &z;
    };
    let period = digits.split_off(start);
    Ok(CoverageWitness { x: x.clone(), m, y, preperiod: digits, period, orbit })
}

impl CoverageWitness {
    /// `K_i` for `i >= 1`.
    pub fn k_digit(&self, i: usize) -> u32 {
        let u = self.preperiod.len();
        if i <= u {
            self.preperiod[i - 1]
        } else {
            self.period[(i - u - 1) % self.period.len()]
        }
    }

    /// The first `len` terms of `(3, K_1, m, 3, K_2, K_1, m, …)`.
    pub fn sequence(&self, len: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(len + 8);
        let mut n = 1;
        while out.len() < len {
            out.push(RESET_DIGIT);
            out.extend((1..=n).rev().map(|i| self.k_digit(i)));
            out.push(self.m);
            n += 1;
        }
        out.truncate(len);
        out
    }
}

pub fn verify_witness(witness: &CoverageWitness, n_max: usize) -> Result<Certificate> {
    let digits = witness.sequence(designated_index(n_max));
    verify_digits(&witness.x, witness.m, &digits, n_max)
}

/// Checks a candidate sequence for `x`: the digit `m` occurs exactly at the
/// designated indices, the value there is within `2^{-n}` of `x`, and every
/// other prefix value lies in `[1/7, 3/7]`.
pub fn verify_digits(x: &Rational, m: u32, digits: &[u32], n_max: usize) -> Result<Certificate> {
    if n_max < 1 {
        return Err(Error::input("depth n_max must be at least 1"));
    }
    let k_max = designated_index(n_max);
    if digits.len() < k_max {
        return Err(Error::input(format!("need {k_max} digits for depth {n_max}, got {}", digits.len())));
    }
    let core = core_interval();
    let mut cert = Certificate::new("verify-coverage");
    cert.record("x", x);
    cert.record("m", Rational::from_integer(BigInt::from(m)));
    cert.record("depth", n_max);

    let mut value = Rational::zero();
    let mut n = 1;
    let mut worst_scaled = Rational::zero();
    let mut failures = 0usize;
    for k in 1..=k_max {
        let d = digits[k - 1];
        if d < 2 {
            return Err(Error::input(format!("digit {d} at index {k} is below 2")));
        }
        value = (Rational::one() - &value) / int(d as i64);
        let designated = k == designated_index(n);
        if designated != (d == m) {
            failures += 1;
            if failures == 1 {
                cert.require(false, format!("m_k = m exactly at designated indices (k = {k})"), Rational::from_integer(d.into()));
            }
        }
        if designated {
            let err = (&value - x).abs();
            let scaled = &err * Rational::from_integer(BigInt::one() << n);
            if scaled > Rational::one() {
                failures += 1;
                if failures == 1 {
                    cert.require(false, format!("|value - x| <= 2^-{n} at k = {k}"), &err);
                }
            }
            if scaled > worst_scaled {
                worst_scaled = scaled;
            }
            n += 1;
        } else if !core.contains(&value) {
            failures += 1;
            if failures == 1 {
                cert.require(false, format!("value in [1/7, 3/7] at k = {k}"), &value);
            }
        }
    }
    cert.record("max 2^n |value - x| at designated indices", worst_scaled);
    cert.record("indices checked", k_max);
    if failures > 0 {
        cert.record("failed checks", failures);
    }
    Ok(cert)
}
