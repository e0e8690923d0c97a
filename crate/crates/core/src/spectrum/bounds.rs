//! Inequalities on `liminf`/`limsup` that depend only on which digits occur.

use crate::certificate::Certificate;
use crate::complements::ModuliSpec;
use crate::error::{Error, Result};
use crate::exact::{rat, AffineMap, Interval, WordMap};
use crate::words::{occurs_cyclically, reversed};

use super::limit_points;

/// `[1/(2K-1), (K-1)/(2K-1)]`, mapped into itself by `T_2, …, T_K`.
pub fn invariant_interval(k: u32) -> Result<Interval> {
    if k < 2 {
        return Err(Error::input(format!("alphabet bound K = {k} must be at least 2")));
    }
    let den = 2 * k as i64 - 1;
    Interval::new(rat(1, den), rat(k as i64 - 1, den))
}

pub fn alphabet_bounds_check(k: u32) -> Result<Certificate> {
    let base = invariant_interval(k)?;
    let mut cert = Certificate::new("alphabet-bounds");
    cert.record("invariant interval", &base);
    for m in 2..=k {
        let image = AffineMap::digit(m)?.map_interval(&base);
        cert.require(image.is_subset_of(&base), format!("T_{m}(I) inside I"), &image);
        cert.record(format!("T_{m}(I)"), image);
    }
    Ok(cert)
}

/// `liminf <= 1/(K+1)` when some period digit is at least `K`.
pub fn tail_bound_check(spec: &ModuliSpec, k: u32) -> Result<Certificate> {
    if k < 2 {
        return Err(Error::input(format!("K = {k} must be at least 2")));
    }
    if !spec.period().iter().any(|&m| m >= k) {
        return Err(Error::input(format!("period of {spec} has no digit >= {k}")));
    }
    let liminf = limit_points(spec).liminf().clone();
    let bound = rat(1, k as i64 + 1);
    let mut cert = Certificate::new("tail-bound");
    cert.record("liminf", &liminf);
    cert.record("1/(K+1)", &bound);
    cert.require(liminf <= bound, "liminf <= 1/(K+1)", &liminf);
    Ok(cert)
}

/// Odd `word`: its reversal recurs in the sequence, so
/// `liminf <= Fix(T_word)`. Even `word` over `{2,3}` whose cylinder image of
/// `[1/5, 2/5]` holds the liminf: `liminf >= Fix(T_word)`.
pub fn pattern_bounds_check(spec: &ModuliSpec, word: &[u32]) -> Result<Certificate> {
    if word.is_empty() {
        return Err(Error::input("pattern word must be nonempty"));
    }
    let map = WordMap::from_word(word)?;
    let fix = map.fixed_point()?;
    let liminf = limit_points(spec).liminf().clone();
    let mut cert = Certificate::new("pattern-bounds");
    cert.record("liminf", &liminf);
    cert.record("Fix(T_word)", &fix);
    if word.len() % 2 == 1 {
        if !occurs_cyclically(spec.period(), &reversed(word)) {
            return Err(Error::input(format!("reversed word {word:?} does not recur in period of {spec}")));
        }
        cert.require(liminf <= fix, "liminf <= Fix(T_word)", &liminf);
    } else {
        let binary = |w: &[u32]| w.iter().all(|&d| d == 2 || d == 3);
        if !binary(word) || !binary(spec.period()) {
            return Err(Error::input("even-length patterns need period and word over {2,3}"));
        }
        let cylinder = map.map_interval(&invariant_interval(3)?);
        if !cylinder.contains(&liminf) {
            return Err(Error::input(format!("liminf {liminf} is not in the cylinder {cylinder}")));
        }
        cert.record("cylinder T_word([1/5,2/5])", cylinder);
        cert.require(liminf >= fix, "liminf >= Fix(T_word)", &liminf);
    }
    Ok(cert)
}

/// `limsup <= 13/31` for periods over `{2,3,4}` in which every `4` preceded
/// by `2` is preceded by `2, 2`.
pub fn lemma_v_check(spec: &ModuliSpec) -> Result<Certificate> {
    let w = spec.period();
    if w.iter().any(|&d| !(2..=4).contains(&d)) {
        return Err(Error::input("period must use digits 2, 3, 4 only"));
    }
    let p = w.len();
    for i in 0..p {
        let (cur, prev, prev2) = (w[i], w[(i + p - 1) % p], w[(i + 2 * p - 2) % p]);
        if cur == 4 && prev == 2 && prev2 != 2 {
            return Err(Error::input(format!("period {w:?} has a 4 after (.., {prev2}, 2) at position {}", i + 1)));
        }
    }
    let limsup = limit_points(spec).limsup().clone();
    let bound = rat(13, 31);
    let mut cert = Certificate::new("lemma-v");
    cert.record("limsup", &limsup);
    cert.record("bound", &bound);
    cert.require(limsup <= bound, "limsup <= 13/31", &limsup);
    Ok(cert)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn per(p: &[u32]) -> ModuliSpec {
        ModuliSpec::periodic(p.to_vec()).unwrap()
    }

    #[test]
    fn alphabet_examples() {
        let c = alphabet_bounds_check(2).unwrap();
        assert!(c.verified);
        assert_eq!(c.witness("invariant interval").unwrap().to_string(), "[1/3, 1/3]");
        let c = alphabet_bounds_check(4).unwrap();
        assert!(c.verified);
        for m in 2..=4i64 {
            let expected = Interval::new(rat(4, 7 * m), rat(6, 7 * m)).unwrap();
            assert_eq!(c.witness(&format!("T_{m}(I)")).unwrap().to_string(), expected.to_string());
        }
        assert!(alphabet_bounds_check(3).unwrap().verified);
        assert!(alphabet_bounds_check(1).is_err());
    }

    #[test]
    fn tail_examples() {
        assert!(tail_bound_check(&per(&[5]), 5).unwrap().verified);
        assert!(tail_bound_check(&per(&[2, 5]), 5).unwrap().verified);
        assert!(tail_bound_check(&per(&[3, 2, 2]), 3).unwrap().verified);
        assert!(tail_bound_check(&per(&[2, 3]), 4).is_err());
    }

    #[test]
    fn pattern_examples() {
        let c = pattern_bounds_check(&per(&[3, 2, 2]), &[3, 2, 2]).unwrap();
        assert!(c.verified);
        assert_eq!(c.witness("Fix(T_word)").unwrap().to_string(), "3/13");
        let c = pattern_bounds_check(&per(&[2, 4, 2, 2]), &[4, 2, 2]).unwrap();
        assert!(c.verified);
        assert_eq!(c.witness("Fix(T_word)").unwrap().to_string(), "3/17");
        let c = pattern_bounds_check(&per(&[3, 3]), &[3, 3]).unwrap();
        assert!(c.verified);
        assert_eq!(c.witness("liminf").unwrap().to_string(), "1/4");
    }

    #[test]
    fn pattern_preconditions() {
        assert!(pattern_bounds_check(&per(&[2, 3]), &[3, 3, 3]).is_err());
        assert!(pattern_bounds_check(&per(&[2, 4]), &[2, 2]).is_err());
        assert!(pattern_bounds_check(&per(&[2]), &[3, 3]).is_err());
        assert!(pattern_bounds_check(&per(&[2]), &[]).is_err());
    }

    #[test]
    fn lemma_v_examples() {
        let c = lemma_v_check(&per(&[2, 2, 4, 2])).unwrap();
        assert!(c.verified);
        assert_eq!(c.witness("limsup").unwrap().to_string(), "13/31");
        let c = lemma_v_check(&per(&[3])).unwrap();
        assert_eq!(c.witness("limsup").unwrap().to_string(), "1/4");
        let c = lemma_v_check(&per(&[2, 3])).unwrap();
        assert!(c.verified);
        assert_eq!(c.witness("limsup").unwrap().to_string(), "2/5");
        assert!(lemma_v_check(&per(&[3, 2, 4])).is_err());
        assert!(lemma_v_check(&per(&[2, 5])).is_err());
    }
}
