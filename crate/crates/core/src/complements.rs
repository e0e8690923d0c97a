//! Perfect additive complement pairs built from a sequence of moduli,
//! their representation and counting functions, and the alternating sums
//! `D_k` that govern `limsup A(x)B(x)/x`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::spectrum;

/// Largest `m_1⋯m_levels` that [`build_pair`] will materialize.
pub const MAX_PAIR_BOUND: u64 = 100_000_000;

/// Smallest truncation bound accepted by [`theorem_b_check`].
pub const THEOREM_B_MIN_BOUND: u64 = 4096;

/// An eventually periodic sequence `(m_i)_{i>=1}` of integers `>= 2`,
/// stored as a (possibly empty) preperiod followed by a repeating period.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuliSpec {
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl ModuliSpec {
    pub fn new(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::input("period must be nonempty"));
        }
        if let Some(&bad) = preperiod.iter().chain(&period).find(|&&m| m < 2) {
            return Err(Error::input(format!("digit {bad} is below 2")));
        }
        Ok(ModuliSpec { preperiod, period })
    }

    pub fn periodic(period: Vec<u32>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    pub fn constant(m: u32) -> Result<Self> {
        Self::new(Vec::new(), vec![m])
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// `m_i` for `i >= 1`.
    pub fn digit(&self, i: usize) -> u32 {
        assert!(i >= 1, "moduli are indexed from 1");
        let u = self.preperiod.len();
        if i <= u {
            self.preperiod[i - 1]
        } else {
            self.period[(i - u - 1) % self.period.len()]
        }
    }

    /// `(m_1, …, m_k)`.
    pub fn prefix(&self, k: usize) -> Vec<u32> {
        self.digits().take(k).collect()
    }

    /// The infinite digit stream `m_1, m_2, …`.
    pub fn digits(&self) -> impl Iterator<Item = u32> + '_ {
        self.preperiod.iter().copied().chain(self.period.iter().copied().cycle())
    }

    /// `(m_2, m_3, …)`.
    pub fn shifted(&self) -> ModuliSpec {
        if self.preperiod.is_empty() {
            let mut period = self.period.clone();
            period.rotate_left(1);
            ModuliSpec { preperiod: Vec::new(), period }
        } else {
            ModuliSpec { preperiod: self.preperiod[1..].to_vec(), period: self.period.clone() }
        }
    }
}

impl fmt::Display for ModuliSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: &[u32]| w.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        if !self.preperiod.is_empty() {
            write!(f, "pre:{} ", join(&self.preperiod))?;
        }
        write!(f, "per:{}", join(&self.period))
    }
}

fn parse_digit_list(text: &str) -> Result<Vec<u32>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|d| {
            let d = d.trim();
            d.parse::<u32>().map_err(|_| Error::input(format!("bad digit {d:?}")))
        })
        .collect()
}

/// Grammar: `[pre:<d>,<d>,…] per:<d>,<d>,…` with every digit `>= 2`.
impl FromStr for ModuliSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut pre = None;
        let mut per = None;
        for token in text.split_whitespace() {
            if let Some(rest) = token.strip_prefix("pre:") {
                if pre.replace(parse_digit_list(rest)?).is_some() {
                    return Err(Error::input("duplicate pre: clause"));
                }
            } else if let Some(rest) = token.strip_prefix("per:") {
                if per.replace(parse_digit_list(rest)?).is_some() {
                    return Err(Error::input("duplicate per: clause"));
                }
            } else {
                return Err(Error::input(format!("unexpected token {token:?} in moduli")));
            }
        }
        let per = per.ok_or_else(|| Error::input("missing per: clause"))?;
        ModuliSpec::new(pre.unwrap_or_default(), per)
    }
}

/// Truncation of the pair `(A, B)` to the digit levels `0..levels`; every
/// `n < bound` has exactly one representation `a + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementPair {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub bound: u64,
}

/// `A` collects the digits of the even levels `0, 2, …` and `B` those of
/// the odd levels. Level `i` has digit range `0..m_{i+1}` and weight
/// `m_1⋯m_i`.
pub fn build_pair(spec: &ModuliSpec, levels: usize) -> Result<ComplementPair> {
    if levels < 2 || !levels.is_multiple_of(2) {
        return Err(Error::input(format!("levels must be a positive even number, got {levels}")));
    }
    let mut a = vec![0u64];
    let mut b = vec![0u64];
    let mut weight: u64 = 1;
    for (level, m) in spec.digits().take(levels).enumerate() {
        let side = if level % 2 == 0 { &mut a } else { &mut b };
        let grown: Vec<u64> = (0..m as u64).flat_map(|e| side.iter().map(move |&s| s + e * weight)).collect();
        *side = grown;
        weight = weight
            .checked_mul(m as u64)
            .filter(|&w| w <= MAX_PAIR_BOUND)
            .ok_or_else(|| Error::BudgetExceeded { what: "complement pair bound".into(), budget: MAX_PAIR_BOUND as usize })?;
    }
    a.sort_unstable();
    b.sort_unstable();
    Ok(ComplementPair { a, b, bound: weight })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRow {
    pub x: u64,
    pub a_count: u64,
    pub b_count: u64,
    /// `A(x)·B(x)/x`.
    pub ratio: Rational,
}

impl ComplementPair {
    /// Number of pairs `(a, b)` with `a + b = n`.
    pub fn rep_count(&self, n: u64) -> Result<u64> {
        if n >= self.bound {
            return Err(Error::input(format!("n = {n} outside [0, {})", self.bound)));
        }
        Ok(self.a.iter().take_while(|&&a| a <= n).filter(|&&a| self.b.binary_search(&(n - a)).is_ok()).count() as u64)
    }

    /// Representation counts for every `n < bound` (saturating at 255).
    pub fn representation_counts(&self) -> Vec<u8> {
        let mut counts = vec![0u8; self.bound as usize];
        for &a in &self.a {
            for &b in &self.b {
                if let Some(c) = counts.get_mut((a + b) as usize) {
                    *c = c.saturating_add(1);
                }
            }
        }
        counts
    }

    /// First `n < bound` whose representation count is not 1, if any.
    pub fn first_non_unique(&self) -> Option<u64> {
        self.representation_counts().iter().position(|&c| c != 1).map(|n| n as u64)
    }

    /// Counting functions `A(x)`, `B(x)` for `x = 1..=x_max`.
    pub fn counting_profile(&self, x_max: u64) -> Result<Vec<ProfileRow>> {
        if x_max < 1 || x_max >= self.bound {
            return Err(Error::input(format!("x_max must lie in [1, {}), got {x_max}", self.bound)));
        }
        Ok(self.counting_scan(1, x_max).collect())
    }

    fn counting_scan(&self, from: u64, to: u64) -> impl Iterator<Item = ProfileRow> + '_ {
        let mut ia = self.a.partition_point(|&v| v < from);
        let mut ib = self.b.partition_point(|&v| v < from);
        (from..=to).map(move |x| {
            while ia < self.a.len() && self.a[ia] <= x {
                ia += 1;
            }
            while ib < self.b.len() && self.b[ib] <= x {
                ib += 1;
            }
            let (ca, cb) = (ia as u64, ib as u64);
            ProfileRow { x, a_count: ca, b_count: cb, ratio: Rational::new(BigInt::from(ca * cb), BigInt::from(x)) }
        })
    }
}

/// CSV with columns `x,A(x),B(x),ratio_num,ratio_den`.
pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("x,A(x),B(x),ratio_num,ratio_den\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.x, r.a_count, r.b_count, r.ratio.numer(), r.ratio.denom()));
    }
    out
}

/// `D_k = 1/m_k - 1/(m_k m_{k-1}) + ⋯ + (-1)^{k-1}/(m_k⋯m_1)`, summed over
/// the common denominator `m_1⋯m_k`.
pub fn d_k(spec: &ModuliSpec, k: usize) -> Result<Rational> {
    if k < 1 {
        return Err(Error::input("k must be at least 1"));
    }
    // prefix products Q_0 = 1, Q_t = m_1⋯m_t
    let mut products = Vec::with_capacity(k + 1);
    products.push(BigInt::one());
    for m in spec.digits().take(k) {
        let next = products.last().unwrap() * m;
        products.push(next);
    }
    let mut numer = BigInt::zero();
    for j in 0..k {
        let term = &products[k - 1 - j];
        if j % 2 == 0 {
            numer += term;
        } else {
            numer -= term;
        }
    }
    Ok(Rational::new(numer, products[k].clone()))
}

/// Compares the largest `A(x)B(x)/x` over the tail window
/// `m_1⋯m_{levels/2} <= x < bound` with `2/(1 + liminf_k D_k)`.
///
/// Small `x` is excluded because the ratio equals 2 at `x = 1` for every
/// sequence; the window starts once half the digit levels are in play.
/// The target uses `limsup_k g(D_k) = g(liminf_k D_k)` for the decreasing
/// map `g(t) = 2/(1+t)`.
pub fn theorem_b_check(spec: &ModuliSpec, levels: usize, tolerance: &Rational) -> Result<Certificate> {
    if tolerance.is_negative() {
        return Err(Error::input("tolerance must be non-negative"));
    }
    let pair = build_pair(spec, levels)?;
    if pair.bound < THEOREM_B_MIN_BOUND {
        return Err(Error::input(format!(
            "levels {levels} give bound {} < {THEOREM_B_MIN_BOUND}; use more levels",
            pair.bound
        )));
    }
    let window_start: u64 = spec.digits().take(levels / 2).map(u64::from).product();
    let limits = spectrum::limit_points(spec);
    let target = spectrum::g(limits.liminf());

    let mut cert = Certificate::new("theorem-b");
    let mut window_max: Option<ProfileRow> = None;
    let mut global_max: Option<ProfileRow> = None;
    let mut lower_bound_ok = true;
    for row in pair.counting_scan(1, pair.bound - 1) {
        if row.a_count * row.b_count < row.x + 1 && lower_bound_ok {
            lower_bound_ok = false;
            cert.require(false, format!("A(x)B(x) >= x+1 at x = {}", row.x), &row.ratio);
        }
        if global_max.as_ref().is_none_or(|m| row.ratio > m.ratio) {
            global_max = Some(row.clone());
        }
        if row.x >= window_start && window_max.as_ref().is_none_or(|m| row.ratio > m.ratio) {
            window_max = Some(row);
        }
    }
    let last = pair.bound - 1;
    let full = (pair.a.len() * pair.b.len()) as u64;
    cert.require(full == last + 1, "A(x)B(x) = x+1 at x = bound-1", Rational::from_integer(full.into()));

    let window_max = window_max.expect("window is nonempty");
    let deviation = (&window_max.ratio - &target).abs();
    cert.record("target 2/(1+liminf D_k)", &target);
    cert.record("liminf D_k", limits.liminf());
    cert.record("max ratio over window", &window_max.ratio);
    cert.record("argmax x", window_max.x as usize);
    cert.record("window start", window_start as usize);
    cert.record("bound", pair.bound as usize);
    cert.record("max ratio over all x >= 1", &global_max.expect("bound >= 2").ratio);
    cert.record("deviation", &deviation);
    cert.require(&deviation <= tolerance, "|max ratio - target| <= tolerance", &deviation);
    cert.note(
        "Target evaluated as 2/(1+liminf D_k) via the limit points of the period; \
         limsup g(D_k) = g(liminf D_k) because g(t) = 2/(1+t) is decreasing.",
    );
    Ok(cert)
}
