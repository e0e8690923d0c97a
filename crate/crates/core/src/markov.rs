//! The word family `M⁽¹⁾ = 2, M⁽²⁾ = 3, M⁽ⁿ⁾ = M⁽ⁿ⁻¹⁾M⁽ⁿ⁻²⁾M⁽ⁿ⁻²⁾`, the
//! constants `λ_n = Fix(T_{M⁽ⁿ⁾})` and `γ_n = g(λ_n)`, and the interval
//! orderings that isolate them.
//!
//! `λ_n` decreases to `λ₀ = Σ (-1)^{l-1}/(M_1⋯M_l) = 0.2293…`, where `M` is
//! the limit word; `γ_n` increases accordingly.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::exact::{rat, Interval, Rational, WordMap};
use crate::spectrum::{attractor_refine, g, periodic_liminf, PeriodOrbit};
use crate::words::{lyndon_words, reversed};

/// Largest `n` accepted by [`markov_word`] (`l_24 ≈ 5.6·10⁶`).
pub const MAX_WORD_INDEX: usize = 24;
/// Largest `n` for which [`lambda_n`] is computed exactly.
pub const MAX_LAMBDA_INDEX: usize = 20;
/// Largest `n` for rotation-by-rotation checks.
pub const MAX_ROTATION_INDEX: usize = 16;
/// Longest period scanned by default in [`verify_adjacent_gap`].
pub const DEFAULT_ADJACENT_PERIOD_BOUND: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovWord {
    pub n: usize,
    pub word: Vec<u32>,
}

impl MarkovWord {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// `l_n = (2ⁿ - (-1)ⁿ)/3`.
pub fn markov_length(n: usize) -> u64 {
    let pow = 1u64 << n;
    if n.is_multiple_of(2) {
        (pow - 1) / 3
    } else {
        (pow + 1) / 3
    }
}

fn check_index(n: usize, max: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::input(format!("{what}: n must be at least 1")));
    }
    if n > max {
        return Err(Error::input(format!("{what}: n = {n} exceeds the supported maximum {max}")));
    }
    Ok(())
}

pub fn markov_word(n: usize) -> Result<MarkovWord> {
    check_index(n, MAX_WORD_INDEX, "markov word")?;
    let word = build_word(n);
    Ok(MarkovWord { n, word })
}

fn build_word(n: usize) -> Vec<u32> {
    let (mut older, mut prev) = (vec![2u32], vec![3u32]);
    if n == 1 {
        return older;
    }
    for _ in 3..=n {
        let mut next = Vec::with_capacity(prev.len() + 2 * older.len());
        next.extend_from_slice(&prev);
        next.extend_from_slice(&older);
        next.extend_from_slice(&older);
        older = std::mem::replace(&mut prev, next);
    }
    prev
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaValue {
    pub n: usize,
    pub value: Rational,
    pub gamma: Rational,
}

pub fn lambda_n(n: usize) -> Result<LambdaValue> {
    check_index(n, MAX_LAMBDA_INDEX, "lambda")?;
    let value = WordMap::from_word(&build_word(n))?.fixed_point()?;
    let gamma = g(&value);
    Ok(LambdaValue { n, value, gamma })
}

/// `[S_terms, S_{terms+1}]` (in order) for the partial sums
/// `S_k = Σ_{l ≤ k} (-1)^{l-1}/(M_1⋯M_l)`.
pub fn lambda0_enclosure(terms: usize) -> Result<Interval> {
    if terms < 2 {
        return Err(Error::input("the enclosure needs at least 2 terms"));
    }
    let mut n = 2;
    while (markov_length(n) as usize) < terms + 1 {
        n += 1;
    }
    let digits = build_word(n);
    let mut product = BigInt::one();
    let mut sum = Rational::from_integer(0.into());
    let mut partials = Vec::with_capacity(2);
    for (l, &m) in digits.iter().take(terms + 1).enumerate() {
        product *= m;
        let term = Rational::new(BigInt::one(), product.clone());
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        if l + 1 >= terms {
            partials.push(sum.clone());
        }
    }
    Ok(Interval::spanning(partials[0].clone(), partials[1].clone()))
}

/// The periodic sequence repeating reversed `M⁽ⁿ⁾` has liminf `λ_n`, reached
/// only along the full-word rotation.
pub fn lambda_witness_check(n: usize) -> Result<Certificate> {
    check_index(n, MAX_ROTATION_INDEX, "lambda witness")?;
    let word = build_word(n);
    let period = reversed(&word);
    let lambda = WordMap::from_word(&word)?.fixed_point()?;
    let orbit = PeriodOrbit::new(&period);
    let liminf = periodic_liminf(&period);

    let mut cert = Certificate::new("lambda-witness");
    cert.record("lambda", &lambda);
    cert.record("liminf", &liminf);
    cert.record("limsup", orbit.max());
    cert.require(liminf == lambda, "liminf = lambda", &liminf);
    cert.require(orbit.point(0) == lambda, "full-word rotation gives lambda", orbit.point(0));
    let low = &orbit.numerators[0];
    let ties: Vec<usize> = (1..orbit.numerators.len()).filter(|&r| &orbit.numerators[r] <= low).collect();
    for &r in ties.iter().take(3) {
        cert.require(false, format!("rotation {r} exceeds lambda"), orbit.point(r));
    }
    cert.record("rotations", orbit.numerators.len());
    Ok(cert)
}

/// `δ = dist(T_2([1/5,2/5]), T_3([1/5,2/5]))/3` and `J = [1/5 - δ, 2/5 + δ]`.
pub fn delta_and_j() -> (Rational, Interval) {
    let base = Interval::new(rat(1, 5), rat(2, 5)).expect("ordered");
    let t2 = WordMap::digit(2).expect("digit").map_interval(&base);
    let t3 = WordMap::digit(3).expect("digit").map_interval(&base);
    let distance = t3.order(&t2).distance;
    let delta = distance / Rational::from_integer(3.into());
    let j = Interval::new(rat(1, 5) - &delta, rat(2, 5) + &delta).expect("ordered");
    (delta, j)
}

pub fn separation_check() -> Certificate {
    let (delta, j) = delta_and_j();
    let base = Interval::new(rat(1, 5), rat(2, 5)).expect("ordered");
    let mut cert = Certificate::new("separation");
    let t2 = WordMap::digit(2).expect("digit");
    let t3 = WordMap::digit(3).expect("digit");
    let order = t3.map_interval(&base).order(&t2.map_interval(&base));
    cert.record("distance", &order.distance);
    cert.record("delta", &delta);
    cert.record("J", &j);
    let (i3, i2) = (t3.map_interval(&j), t2.map_interval(&j));
    cert.require(i3.precedes(&i2), "T_3(J) before T_2(J)", &i3);
    cert.require(i2.is_subset_of(&j) && i3.is_subset_of(&j), "T_2(J), T_3(J) inside J", &i2);
    cert
}

fn j_image(word: &[u32], j: &Interval) -> Result<Interval> {
    Ok(WordMap::from_word(word)?.map_interval(j))
}

/// Checks `T_{M⁽ⁿ⁾}(J) ≺ T_{σ^ℓ M⁽ⁿ⁾}(J)` for `1 ≤ ℓ < l_n`.
pub fn verify_shift_order(n: usize) -> Result<Certificate> {
    if n < 3 {
        return Err(Error::input("shift order starts at n = 3"));
    }
    check_index(n, MAX_ROTATION_INDEX, "shift order")?;
    let (_, j) = delta_and_j();
    let word = build_word(n);
    let len = word.len();
    // σ^ℓ M = (M_{ℓ+1}, …, M_l, M_1, …, M_ℓ), so T_{σ^ℓ M} = T_{suffix} ∘ T_{prefix}.
    let mut prefixes = Vec::with_capacity(len);
    let mut acc = WordMap::identity();
    for &m in &word {
        prefixes.push(acc.clone());
        acc = acc.compose(&WordMap::digit(m)?);
    }
    let full = acc;
    let mut suffixes = vec![WordMap::identity(); len + 1];
    for i in (0..len).rev() {
        suffixes[i] = WordMap::digit(word[i])?.compose(&suffixes[i + 1]);
    }
    let base = full.map_interval(&j);
    let mut cert = Certificate::new("shift-order");
    cert.record("T_M(J)", &base);
    // Every rotation shares the scale and orientation of `full`, so with
    // images `(offset ± J)/scale` the order reduces to comparing offsets.
    let width = j.width();
    let failures: Vec<(usize, Interval)> = (1..len)
        .into_par_iter()
        .filter_map(|l| {
            let rotated = suffixes[l].compose(&prefixes[l]);
            debug_assert_eq!(rotated.scale(), full.scale());
            let lead = Rational::from_integer(rotated.offset() - full.offset());
            (lead <= width).then(|| (l, rotated.map_interval(&j)))
        })
        .collect();
    for (l, image) in failures.iter().take(3) {
        cert.require(false, format!("T_M(J) before T_(shift {l})(J)"), image);
    }
    cert.record("comparisons", len - 1);

    if n == 3 {
        let chain: [&[u32]; 6] = [&[3, 2, 2], &[3, 3, 3], &[3, 3, 2], &[2, 2, 3], &[2, 3, 3], &[2, 3, 2]];
        let images = chain.iter().map(|w| j_image(w, &j)).collect::<Result<Vec<_>>>()?;
        for (pair, words) in images.windows(2).zip(chain.windows(2)) {
            cert.require(
                pair[0].precedes(&pair[1]),
                format!("T_{:?}(J) before T_{:?}(J)", words[0], words[1]),
                pair[1].lo() - pair[0].hi(),
            );
        }
    }
    Ok(cert)
}

/// Isolation of `(λ_{n+1}, λ_n)`: cylinder nesting and order, the middle gap
/// free of the depth-`depth` cover of the `{2,3}` attractor, and no periodic
/// liminf inside the gap.
pub fn verify_adjacent_gap(n: usize, depth: usize, period_bound: usize) -> Result<Certificate> {
    if n < 2 {
        return Err(Error::input("adjacent gap starts at n = 2"));
    }
    check_index(n + 1, MAX_LAMBDA_INDEX, "adjacent gap")?;
    if period_bound == 0 {
        return Err(Error::input("period bound must be at least 1"));
    }
    let (_, j) = delta_and_j();
    let current = build_word(n);
    let previous = build_word(n - 1);
    let doubled: Vec<u32> = previous.iter().chain(&previous).copied().collect();
    let image = j_image(&current, &j)?;
    let parent = j_image(&previous, &j)?;
    let twice = j_image(&doubled, &j)?;

    let mut cert = Certificate::new("adjacent-gap");
    if n >= 3 {
        cert.require(image.is_subset_of(&parent), "T_M(n)(J) inside T_M(n-1)(J)", &image);
    }
    cert.require(!image.intersects(&twice), "T_M(n)(J) disjoint from T_M(n-1)M(n-1)(J)", &image);
    let order = image.order(&twice);
    cert.require(order.precedes, "T_M(n)(J) before T_M(n-1)M(n-1)(J)", &twice);
    if let Some(mid) = &order.gap {
        cert.record("mid", mid);
        let base = Interval::new(rat(1, 5), rat(2, 5))?;
        let cover = attractor_refine(&[2, 3], &base, depth)?;
        let hits: Vec<&Interval> = cover.iter().filter(|p| p.meets_interior_of(mid)).collect();
        cert.record("cover pieces", cover.len());
        for piece in hits.iter().take(3) {
            cert.require(false, "cover piece inside mid", *piece);
        }
    }

    let upper = lambda_n(n)?.value;
    let lower = lambda_n(n + 1)?.value;
    cert.record("lambda_n", &upper);
    cert.record("lambda_(n+1)", &lower);
    cert.require(lower < upper, "lambda_(n+1) < lambda_n", &lower);
    let gap = Interval::new(lower, upper.clone()).unwrap_or_else(|_| Interval::point(upper));
    let words = lyndon_words(&[2, 3], period_bound);
    let inside: Vec<(Vec<u32>, Rational)> = words
        .par_iter()
        .filter_map(|w| {
            let v = periodic_liminf(w);
            gap.contains_strictly(&v).then(|| (w.clone(), v))
        })
        .collect();
    cert.record("periodic words scanned", words.len());
    for (w, v) in inside.iter().take(3) {
        cert.require(false, format!("liminf of period {w:?} inside (lambda_(n+1), lambda_n)"), v);
    }
    Ok(cert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Lambda(usize),
    /// At or below the upper end of the `λ₀` enclosure.
    BelowCut,
    Unexplained,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Lambda(n) => write!(f, "lambda_{n}"),
            Classification::BelowCut => f.write_str("below lambda_0 cut"),
            Classification::Unexplained => f.write_str("unexplained"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub period: Vec<u32>,
    pub liminf: Rational,
    pub classification: Classification,
}

#[derive(Clone, Debug)]
pub struct Theorem1Scan {
    pub rows: Vec<CensusRow>,
    pub certificate: Certificate,
}

pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("period,liminf,classification\n");
    for row in rows {
        let period: Vec<String> = row.period.iter().map(u32::to_string).collect();
        out.push_str(&format!("\"{}\",{},{}\n", period.join(","), row.liminf, row.classification));
    }
    out
}

/// All purely periodic `{2,3}` sequences with period at most `period_bound`:
/// each liminf above the `λ₀` enclosure must be some `λ_n`, and no liminf may
/// fall in `(λ_1, ∞)` or in a gap `(λ_{n+1}, λ_n)`.
pub fn theorem1_scan(period_bound: usize, terms: usize) -> Result<Theorem1Scan> {
    if period_bound == 0 {
        return Err(Error::input("period bound must be at least 1"));
    }
    let cut = lambda0_enclosure(terms)?;
    let mut lambdas = vec![lambda_n(1)?.value];
    while lambdas.last().expect("nonempty") > cut.hi() {
        let next = lambdas.len() + 1;
        if next > MAX_LAMBDA_INDEX {
            return Err(Error::BudgetExceeded { what: "lambda values above the cut".into(), budget: MAX_LAMBDA_INDEX });
        }
        lambdas.push(lambda_n(next)?.value);
    }
    // lambdas[i] = λ_{i+1}; the last entry is the first one at or below the cut.
    let above = lambdas.len() - 1;
    let mut reach = 1;
    while reach < MAX_LAMBDA_INDEX && markov_length(reach + 1) as usize <= period_bound {
        reach += 1;
    }
    while lambdas.len() < reach + 1 {
        lambdas.push(lambda_n(lambdas.len() + 1)?.value);
    }

    let words = lyndon_words(&[2, 3], period_bound);
    let rows: Vec<CensusRow> = words
        .par_iter()
        .map(|w| {
            let liminf = periodic_liminf(w);
            let classification = if &liminf <= cut.hi() {
                Classification::BelowCut
            } else {
                match lambdas[..above].iter().position(|l| l == &liminf) {
                    Some(i) => Classification::Lambda(i + 1),
                    None => Classification::Unexplained,
                }
            };
            CensusRow { period: w.clone(), liminf, classification }
        })
        .collect();

    let mut cert = Certificate::new("theorem1-scan");
    cert.record("lambda_0 enclosure", &cut);
    cert.record("lambda values above the cut", above);
    cert.record("periodic words scanned", rows.len());
    for row in rows.iter().filter(|r| r.classification == Classification::Unexplained).take(5) {
        cert.require(false, format!("liminf of period {:?} is no lambda_n", row.period), &row.liminf);
    }
    for row in rows.iter().filter(|r| r.liminf > lambdas[0]).take(3) {
        cert.require(false, format!("liminf of period {:?} above lambda_1", row.period), &row.liminf);
    }
    for n in 1..=reach {
        let gap = Interval::new(lambdas[n].clone(), lambdas[n - 1].clone())?;
        if let Some(row) = rows.iter().find(|r| gap.contains_strictly(&r.liminf)) {
            cert.require(false, format!("liminf of period {:?} inside (lambda_{}, lambda_{n})", row.period, n + 1), &row.liminf);
        }
    }
    cert.record("gaps checked", reach);
    for n in 1..=above {
        let hit = rows.iter().any(|r| r.classification == Classification::Lambda(n));
        if markov_length(n) as usize <= period_bound {
            cert.require(hit, format!("lambda_{n} realised"), &lambdas[n - 1]);
        }
    }
    Ok(Theorem1Scan { rows, certificate: cert })
}
