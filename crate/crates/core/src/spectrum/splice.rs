//! Concatenating segments of witness sequences so that the liminf of the
//! result is the limit of the individual liminfs.
//!
//! Segment `n` is `m^{(n)}_{l_n+1}, …, m^{(n)}_{k_n}`. The cut `l_n` is the
//! first index past which `T_{m_[l,1]}(0)` never drops to `α_n - ε_n` again
//! and which is itself `ε_n`-close to `α_n`; `k_n > l_n` is the first
//! `ε_n`-close index with `2^{k_n - l_n} ε_n > 5 ε_{n-1}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::certificate::Certificate;
use crate::complements::ModuliSpec;
use crate::error::{Error, Result};
use crate::exact::{AffineMap, Rational, WordMap};

use super::limit_points;

/// Prefix evaluations allowed per target while searching for cuts.
pub const DEFAULT_SPLICE_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceTarget {
    pub spec: ModuliSpec,
    /// Must equal the liminf of `spec`.
    pub alpha: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplicePlan {
    pub targets: Vec<Rational>,
    pub epsilons: Vec<Rational>,
    /// `(l_n, k_n)` per target.
    pub cuts: Vec<(usize, usize)>,
    /// `a_N = Σ_{n ≤ N} (k_n - l_n)`.
    pub boundaries: Vec<usize>,
    pub word: Vec<u32>,
}

/// Lazily evaluated `T_{m_[k,1]}(0)` for `k = 1, 2, …`, indexed from 1.
struct PrefixTable<'a> {
    spec: &'a ModuliSpec,
    values: Vec<Rational>,
    budget: usize,
}

impl<'a> PrefixTable<'a> {
    fn new(spec: &'a ModuliSpec, budget: usize) -> Self {
        PrefixTable { spec, values: vec![Rational::zero()], budget }
    }

    fn get(&mut self, k: usize) -> Result<&Rational> {
        while self.values.len() <= k {
            if self.values.len() > self.budget {
                return Err(Error::BudgetExceeded { what: format!("prefix search for {}", self.spec), budget: self.budget });
            }
            let i = self.values.len();
            let m = self.spec.digit(i);
            let next = (Rational::one() - &self.values[i - 1]) / Rational::from_integer(BigInt::from(m));
            self.values.push(next);
        }
        Ok(&self.values[k])
    }
}

/// Index after which every value exceeds `floor`.
///
/// Past the preperiod, the distance from the value at index `u + jp + r` to
/// the limit point `x_r` shrinks with `j`. Once it is below `x_r - floor`,
/// every later value in that phase clears `floor`.
fn last_low_index(table: &mut PrefixTable, floor: &Rational) -> Result<usize> {
    let spec = table.spec;
    let u = spec.preperiod().len();
    let p = spec.period().len();
    let mut limits = Vec::with_capacity(p);
    // x_r is reached after digits period[0..r]; x_0 = x_p.
    let x0 = limit_points_start(spec)?;
    let mut x = x0;
    for r in 0..p {
        limits.push(x.clone());
        x = AffineMap::digit(spec.period()[r])?.apply(&x);
    }
    for x_r in &limits {
        if x_r <= floor {
            return Err(Error::input(format!("limit point {x_r} of {spec} does not exceed {floor}")));
        }
    }
    let mut settled = vec![false; p];
    let mut remaining = p;
    let mut last_low = 0;
    let mut k = 1;
    while remaining > 0 {
        let v = table.get(k)?.clone();
        if &v <= floor {
            last_low = k;
        }
        if k >= u {
            let phase = (k - u) % p;
            let x_r = &limits[phase];
            if !settled[phase] && (&v - x_r).abs() < x_r - floor {
                settled[phase] = true;
                remaining -= 1;
            }
        }
        k += 1;
    }
    Ok(last_low)
}

/// Limit of the values at indices `u + jp`.
fn limit_points_start(spec: &ModuliSpec) -> Result<Rational> {
    let mut reversed_period = spec.period().to_vec();
    reversed_period.reverse();
    WordMap::from_word(&reversed_period)?.fixed_point()
}

pub fn splice(targets: &[SpliceTarget], epsilons: &[Rational], budget: usize) -> Result<(SplicePlan, Certificate)> {
    if targets.is_empty() {
        return Err(Error::input("at least one target is required"));
    }
    if targets.len() != epsilons.len() {
        return Err(Error::input(format!("{} targets but {} epsilons", targets.len(), epsilons.len())));
    }
    for (i, e) in epsilons.iter().enumerate() {
        if !e.is_positive() {
            return Err(Error::input(format!("epsilon {e} is not positive")));
        }
        if i > 0 && e > &epsilons[i - 1] {
            return Err(Error::input("epsilons must be non-increasing"));
        }
    }
    for t in targets {
        let liminf = limit_points(&t.spec).liminf().clone();
        if liminf != t.alpha {
            return Err(Error::input(format!("alpha {} differs from liminf {liminf} of {}", t.alpha, t.spec)));
        }
    }

    let mut cuts = Vec::new();
    let mut boundaries = Vec::new();
    let mut word = Vec::new();
    for (n, (target, eps)) in targets.iter().zip(epsilons).enumerate() {
        let mut table = PrefixTable::new(&target.spec, budget);
        let close = |table: &mut PrefixTable, k: usize| -> Result<bool> {
            Ok((table.get(k)? - &target.alpha).abs() < *eps)
        };
        let l = if n == 0 {
            0
        } else {
            let floor = &target.alpha - eps;
            let mut l = last_low_index(&mut table, &floor)? + 1;
            while !close(&mut table, l)? {
                l += 1;
            }
            l
        };
        let need = if n == 0 { Rational::zero() } else { Rational::from_integer(5.into()) * &epsilons[n - 1] / eps };
        let mut k = l + 1;
        while !(close(&mut table, k)? && Rational::from_integer(BigInt::one() << (k - l)) > need) {
            k += 1;
        }
        word.extend((l + 1..=k).map(|i| target.spec.digit(i)));
        cuts.push((l, k));
        boundaries.push(word.len());
    }

    let plan = SplicePlan {
        targets: targets.iter().map(|t| t.alpha.clone()).collect(),
        epsilons: epsilons.to_vec(),
        cuts,
        boundaries,
        word,
    };
    let cert = verify_plan(&plan)?;
    Ok((plan, cert))
}

/// Re-checks the boundary and segment inequalities on the emitted word.
pub fn verify_plan(plan: &SplicePlan) -> Result<Certificate> {
    let mut cert = Certificate::new("splice");
    let mut values = vec![Rational::zero()];
    for &m in &plan.word {
        let prev = values.last().expect("nonempty");
        values.push(AffineMap::digit(m)?.apply(prev));
    }
    let two = Rational::from_integer(2.into());
    let three = Rational::from_integer(3.into());
    for (n, &(l, k)) in plan.cuts.iter().enumerate() {
        let tag = n + 1;
        cert.require(l < k, format!("l_{tag} < k_{tag}"), k - l);
        if n > 0 {
            let ratio = Rational::from_integer(5.into()) * &plan.epsilons[n - 1] / &plan.epsilons[n];
            let power = Rational::from_integer(BigInt::one() << (k - l));
            cert.require(ratio < power, format!("5 eps_{} / eps_{tag} < 2^(k_{tag} - l_{tag})", tag - 1), &ratio);
        }
    }
    for (n, &a) in plan.boundaries.iter().enumerate() {
        let tag = n + 1;
        let alpha = &plan.targets[n];
        let eps = &plan.epsilons[n];
        let err = (&values[a] - alpha).abs();
        cert.require(err < &two * eps, format!("|value at a_{tag} - alpha_{tag}| < 2 eps_{tag}"), &err);
        cert.record(format!("value at a_{tag}"), &values[a]);
        if let Some(&next) = plan.boundaries.get(n + 1) {
            let floor = alpha - &three * eps;
            let low = (a + 1..=next).min_by(|&i, &j| values[i].cmp(&values[j])).expect("nonempty segment");
            cert.require(values[low] > floor, format!("segment {} stays above alpha_{tag} - 3 eps_{tag} (index {low})", tag + 1), &values[low]);
        }
    }
    cert.record("word length", plan.word.len());
    Ok(cert)
}
