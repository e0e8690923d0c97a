//! Limit values of `T_{m_k} ∘ ⋯ ∘ T_{m_1}(0)` for eventually periodic
//! moduli, and the finite checks built on them.
//!
//! # Limit points of a periodic tail
//!
//! Write the period as `w = (w_1, …, w_p)` and let
//! `A = T_{w_p} ∘ ⋯ ∘ T_{w_1}`. Past the preperiod (length `u`) the value at
//! index `u + jp + r` is `T_{w_r} ∘ ⋯ ∘ T_{w_1}(A^j(v_u))`. `A` is a
//! contraction, so as `j → ∞` this tends to
//! `x_r = T_{w_r} ∘ ⋯ ∘ T_{w_1}(Fix A)`, which is the fixed point of the
//! rotation `T_{w_r} ∘ ⋯ ∘ T_{w_1} ∘ T_{w_p} ∘ ⋯ ∘ T_{w_{r+1}}` of the
//! reversed period. The accumulation points are exactly `x_0, …, x_{p-1}`,
//! whatever the preperiod.
//!
//! All rotations share the scale `q = w_1⋯w_p` and sign `(-1)^p`, so each
//! `x_r` is an integer over the common denominator `q - (-1)^p`, and the
//! orbit `x_r = (1 - x_{r-1})/w_r` can be run on numerators alone.

mod bounds;
mod coverage;
mod gaps;
mod refine;
mod splice;

pub use bounds::{alphabet_bounds_check, invariant_interval, lemma_v_check, pattern_bounds_check, tail_bound_check};
pub use coverage::{coverage_witness, designated_index, verify_digits, verify_witness, CoverageWitness};
pub use gaps::{
    gap_checks, gap_interval, measure_zero_certificate, ADMISSIBLE_QUADRUPLES, DEFAULT_GAP_PERIOD_BOUND,
};
pub use refine::attractor_refine;
pub use splice::{splice, verify_plan, SplicePlan, SpliceTarget, DEFAULT_SPLICE_BUDGET};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complements::ModuliSpec;
use crate::error::{Error, Result};
use crate::exact::{int, Rational, WordMap};
use crate::words::reversed;

/// Accumulation points of `T_{m_[k,1]}(0)` for an eventually periodic spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitPointSet {
    /// Sorted, without repeats.
    pub points: Vec<Rational>,
    pub period_used: Vec<u32>,
}

impl LimitPointSet {
    pub fn liminf(&self) -> &Rational {
        self.points.first().expect("a period yields at least one point")
    }

    pub fn limsup(&self) -> &Rational {
        self.points.last().expect("a period yields at least one point")
    }
}

/// Limit orbit `x_0, …, x_{p-1}` held as numerators over one denominator.
#[derive(Clone, Debug)]
pub(crate) struct PeriodOrbit {
    pub denominator: BigInt,
    pub numerators: Vec<BigInt>,
}

impl PeriodOrbit {
    pub fn new(period: &[u32]) -> Self {
        let forward = WordMap::from_word(&reversed(period)).expect("period digits are validated");
        let (mut num, denominator) = forward.fixed_point_parts();
        let mut numerators = Vec::with_capacity(period.len());
        numerators.push(num.clone());
        for &w in &period[..period.len() - 1] {
            let (next, rem) = (&denominator - &num).div_rem(&BigInt::from(w));
            debug_assert!(rem.is_zero(), "rotation fixed points share the denominator");
            num = next;
            numerators.push(num.clone());
        }
        PeriodOrbit { denominator, numerators }
    }

    pub fn point(&self, r: usize) -> Rational {
        Rational::new(self.numerators[r].clone(), self.denominator.clone())
    }

    pub fn argmin(&self) -> usize {
        (0..self.numerators.len()).min_by(|&a, &b| self.numerators[a].cmp(&self.numerators[b])).unwrap()
    }

    pub fn argmax(&self) -> usize {
        (0..self.numerators.len()).max_by(|&a, &b| self.numerators[a].cmp(&self.numerators[b])).unwrap()
    }

    pub fn min(&self) -> Rational {
        self.point(self.argmin())
    }

    pub fn max(&self) -> Rational {
        self.point(self.argmax())
    }
}

/// `liminf` of a purely periodic sequence with the given period.
pub fn periodic_liminf(period: &[u32]) -> Rational {
    PeriodOrbit::new(period).min()
}

/// `T_{m_k} ∘ ⋯ ∘ T_{m_1}(0)`, evaluated by composing the digit maps.
pub fn evaluate_prefix(spec: &ModuliSpec, k: usize) -> Result<Rational> {
    if k < 1 {
        return Err(Error::input("prefix length k must be at least 1"));
    }
    let word = reversed(&spec.prefix(k));
    let map = WordMap::from_word(&word)?;
    Ok(Rational::new(map.offset().clone(), map.scale().clone()))
}

/// Iterator over `T_{m_[k,1]}(0)` for `k = 1, 2, …`.
pub fn prefix_values(spec: &ModuliSpec) -> impl Iterator<Item = Rational> + '_ {
    let one = Rational::one();
    spec.digits().scan(Rational::zero(), move |v, m| {
        *v = (&one - &*v) / int(m as i64);
        Some(v.clone())
    })
}

/// Natural projection `Σ (-1)^{k-1}/(m_1⋯m_k)`: the preperiod maps applied
/// to the fixed point of `T_{w_1} ∘ ⋯ ∘ T_{w_p}`.
pub fn projection(spec: &ModuliSpec) -> Rational {
    let tail = WordMap::from_word(spec.period()).expect("validated").fixed_point().expect("period nonempty");
    WordMap::from_word(spec.preperiod()).expect("validated").apply(&tail)
}

pub fn limit_points(spec: &ModuliSpec) -> LimitPointSet {
    let orbit = PeriodOrbit::new(spec.period());
    let mut points: Vec<Rational> = (0..orbit.numerators.len()).map(|r| orbit.point(r)).collect();
    points.sort();
    points.dedup();
    LimitPointSet { points, period_used: spec.period().to_vec() }
}

/// `g(x) = 2/(1+x)`, the conjugacy between the two spectra.
pub fn g(x: &Rational) -> Rational {
    int(2) / (int(1) + x)
}

/// `g⁻¹(y) = 2/y - 1`.
pub fn g_inverse(y: &Rational) -> Result<Rational> {
    if y.is_zero() {
        return Err(Error::Domain("g⁻¹ is undefined at 0".into()));
    }
    Ok(int(2) / y - int(1))
}

/// Spectrum value `limsup_k 2/(1+D_k) = g(liminf_k D_k)`.
pub fn lspac_value(spec: &ModuliSpec) -> Rational {
    g(limit_points(spec).liminf())
}

/// `Ĝ_m(x) = 2mx/((m+2)x - 2)`.
pub fn ghat_apply(m: u32, x: &Rational) -> Result<Rational> {
    crate::exact::AffineMap::digit(m)?;
    let den = int(m as i64 + 2) * x - int(2);
    if den.is_zero() {
        return Err(Error::Domain(format!("Ĝ_{m} has a pole at {x}")));
    }
    Ok(int(2 * m as i64) * x / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, AffineMap};
    use crate::words::rotate;

    fn per(p: &[u32]) -> ModuliSpec {
        ModuliSpec::periodic(p.to_vec()).unwrap()
    }

    /// Fixed points of every rotation of the reversed period, computed
    /// directly from the rotated words.
    fn rotation_fixed_points(period: &[u32]) -> Vec<Rational> {
        let rev = reversed(period);
        let mut pts: Vec<Rational> =
            (0..rev.len()).map(|s| AffineMap::word(&rotate(&rev, s)).unwrap().fixed_point().unwrap()).collect();
        pts.sort();
        pts.dedup();
        pts
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(evaluate_prefix(&per(&[2]), 1).unwrap(), rat(1, 2));
        assert_eq!(evaluate_prefix(&per(&[3, 2, 2]), 3).unwrap(), rat(1, 3));
        assert!(evaluate_prefix(&per(&[2]), 0).is_err());
        let s: ModuliSpec = "pre:7,2 per:3,5".parse().unwrap();
        let iterated: Vec<Rational> = prefix_values(&s).take(12).collect();
        for (k, v) in iterated.iter().enumerate() {
            assert_eq!(&evaluate_prefix(&s, k + 1).unwrap(), v);
        }
    }

    #[test]
    fn projection_examples() {
        assert_eq!(projection(&per(&[2])), rat(1, 3));
        assert_eq!(projection(&per(&[2, 3])), rat(2, 5));
        assert_eq!(projection(&"pre:6 per:2,3".parse().unwrap()), rat(1, 10));
    }

    #[test]
    fn limit_point_examples() {
        assert_eq!(limit_points(&per(&[2])).points, vec![rat(1, 3)]);
        let lp = limit_points(&per(&[3, 2, 2]));
        assert_eq!(lp.points, vec![rat(3, 13), rat(4, 13), rat(5, 13)]);
        assert_eq!(lp.liminf(), &rat(3, 13));
        let lp = limit_points(&per(&[2, 5]));
        assert_eq!(lp.points, vec![rat(1, 9), rat(4, 9)]);
        assert_eq!(lp.limsup(), &rat(4, 9));
    }

    #[test]
    fn preperiod_does_not_move_limit_points() {
        let a: ModuliSpec = "pre:9,2,7 per:3,2,2".parse().unwrap();
        assert_eq!(limit_points(&a).points, limit_points(&per(&[3, 2, 2])).points);
    }

    #[test]
    fn orbit_matches_rotation_fixed_points() {
        for p in [&[2u32][..], &[3, 2, 2], &[2, 5], &[4, 2, 3, 3, 2], &[2, 2, 2, 4], &[3, 3], &[7, 2, 9, 2, 3, 3]] {
            assert_eq!(limit_points(&per(p)).points, rotation_fixed_points(p), "period {p:?}");
        }
    }

    #[test]
    fn lspac_examples() {
        assert_eq!(lspac_value(&per(&[2])), rat(3, 2));
        assert_eq!(lspac_value(&per(&[4])), rat(5, 3));
        assert_eq!(lspac_value(&per(&[3])), rat(8, 5));
    }

    #[test]
    fn ghat_examples() {
        assert_eq!(ghat_apply(2, &int(2)).unwrap(), rat(4, 3));
        let via_conjugacy = g(&AffineMap::digit(2).unwrap().apply(&g_inverse(&int(2)).unwrap()));
        assert_eq!(via_conjugacy, rat(4, 3));
        assert_eq!(ghat_apply(3, &int(2)).unwrap(), rat(3, 2));
        assert_eq!(g(&rat(1, 3)), rat(3, 2));
        for m in 2..10u32 {
            let fixed = g(&AffineMap::digit(m).unwrap().fixed_point().unwrap());
            assert_eq!(ghat_apply(m, &fixed).unwrap(), fixed);
        }
        assert!(matches!(ghat_apply(2, &rat(1, 2)), Err(Error::Domain(_))));
        assert!(ghat_apply(1, &int(2)).is_err());
    }
}
