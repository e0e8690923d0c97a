use lspac::complements::{d_k, ModuliSpec};
use lspac::exact::{AffineMap, Interval, Rational};
use lspac::markov::{delta_and_j, lambda_n, markov_length, markov_word};
use lspac::spectrum::{
    attractor_refine, evaluate_prefix, g, g_inverse, ghat_apply, invariant_interval, limit_points, lspac_value,
    prefix_values, projection,
};
use lspac::words::lyndon_words;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn t(m: u32, x: &Rational) -> Rational {
    (Rational::one() - x) / Rational::from_integer(BigInt::from(m))
}

fn spec_strategy(max_digit: u32, max_pre: usize, max_per: usize) -> impl Strategy<Value = ModuliSpec> {
    (
        prop::collection::vec(2..=max_digit, 0..=max_pre),
        prop::collection::vec(2..=max_digit, 1..=max_per),
    )
        .prop_map(|(pre, per)| ModuliSpec::new(pre, per).unwrap())
}

proptest! {
    #[test]
    fn prefix_matches_alternating_sum(spec in spec_strategy(12, 4, 5), k in 1usize..=60) {
        prop_assert_eq!(evaluate_prefix(&spec, k).unwrap(), d_k(&spec, k).unwrap());
    }

    #[test]
    fn prefix_iterator_matches_direct(spec in spec_strategy(9, 3, 4)) {
        for (i, v) in prefix_values(&spec).take(30).enumerate() {
            prop_assert_eq!(v, evaluate_prefix(&spec, i + 1).unwrap());
        }
    }

    #[test]
    fn limit_set_is_invariant_under_the_period(spec in spec_strategy(7, 3, 5)) {
        let points = limit_points(&spec);
        let period = spec.period();
        // Rotating by one digit maps each limit point to the next one.
        let mut image: Vec<Rational> = Vec::new();
        let mut x = points.points.iter().find(|p| {
            let mut y = (*p).clone();
            for &m in period {
                y = t(m, &y);
            }
            &y == *p
        }).expect("some point is fixed by the full period").clone();
        for &m in period {
            x = t(m, &x);
            image.push(x.clone());
        }
        image.sort();
        image.dedup();
        prop_assert_eq!(&image, &points.points);
        prop_assert!(points.points.contains(points.liminf()));
        prop_assert!(points.points.contains(points.limsup()));
    }

    #[test]
    fn ghat_is_conjugate(m in 2u32..=10, p in 1i64..400, q in 1i64..400) {
        let y = r(p, q);
        let x = g_inverse(&y).unwrap();
        let lhs = g(&t(m, &x));
        match ghat_apply(m, &y) {
            Ok(rhs) => prop_assert_eq!(lhs, rhs),
            Err(_) => prop_assert_eq!(t(m, &x), r(-1, 1)),
        }
    }

    #[test]
    fn projection_is_the_series(spec in spec_strategy(6, 3, 3)) {
        let pi = projection(&spec);
        let mut sum = Rational::zero();
        let mut product = BigInt::one();
        for (l, m) in spec.digits().take(120).enumerate() {
            product *= m;
            let term = Rational::new(BigInt::one(), product.clone());
            if l % 2 == 0 { sum += term } else { sum -= term }
        }
        prop_assert!((pi - sum).abs() < Rational::new(BigInt::one(), BigInt::one() << 100));
    }
}

#[test]
fn constant_and_two_digit_families() {
    for a in 2..=12u32 {
        let spec = ModuliSpec::constant(a).unwrap();
        assert_eq!(limit_points(&spec).liminf(), &r(1, a as i64 + 1));
        assert_eq!(lspac_value(&spec), r(2 * a as i64 + 2, a as i64 + 2));
    }
    for a in 2..=8u32 {
        for b in a..=8u32 {
            let spec = ModuliSpec::periodic(vec![a, b]).unwrap();
            assert_eq!(limit_points(&spec).liminf(), &r(a as i64 - 1, (a * b) as i64 - 1), "({a},{b})");
        }
    }
}

#[test]
fn lspac_is_g_of_liminf() {
    for w in lyndon_words(&[2, 3, 5], 5) {
        let spec = ModuliSpec::periodic(w).unwrap();
        assert_eq!(lspac_value(&spec), r(2, 1) / (Rational::one() + limit_points(&spec).liminf()));
    }
}

#[test]
fn liminf_stays_in_invariant_interval() {
    for k in [3u32, 4] {
        let digits: Vec<u32> = (2..=k).collect();
        let base = invariant_interval(k).unwrap();
        for w in lyndon_words(&digits, 8) {
            let spec = ModuliSpec::periodic(w.clone()).unwrap();
            let points = limit_points(&spec);
            assert!(base.contains(points.liminf()) && base.contains(points.limsup()), "{w:?}");
        }
    }
}

#[test]
fn liminf_lies_in_every_refinement() {
    let cases: [(&[u32], Interval); 3] = [
        (&[2, 3], Interval::new(r(1, 5), r(2, 5)).unwrap()),
        (&[2, 5], invariant_interval(5).unwrap()),
        (&[2, 3, 4], invariant_interval(4).unwrap()),
    ];
    for (digits, base) in cases {
        let words = lyndon_words(digits, 6);
        for depth in 1..=10 {
            let cover = attractor_refine(digits, &base, depth).unwrap();
            for w in &words {
                let v = limit_points(&ModuliSpec::periodic(w.clone()).unwrap()).liminf().clone();
                assert!(cover.iter().any(|p| p.contains(&v)), "{digits:?} depth {depth}: {w:?}");
            }
        }
    }
}

#[test]
fn refinement_is_nested() {
    let base = Interval::new(r(1, 5), r(2, 5)).unwrap();
    let mut previous = attractor_refine(&[2, 3], &base, 1).unwrap();
    for depth in 2..=8 {
        let next = attractor_refine(&[2, 3], &base, depth).unwrap();
        assert!(next.iter().all(|p| previous.iter().any(|q| p.is_subset_of(q))));
        assert!(next.windows(2).all(|w| w[0].precedes(&w[1])));
        previous = next;
    }
}

#[test]
fn deep_prefixes_approach_the_liminf() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let tiny = Rational::new(BigInt::one(), BigInt::one() << 100);
    for _ in 0..40 {
        let pre: Vec<u32> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(2..=4)).collect();
        let per: Vec<u32> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(2..=4)).collect();
        let p = per.len();
        let spec = ModuliSpec::new(pre, per).unwrap();
        let brute = (200..=200 + 4 * p).map(|k| evaluate_prefix(&spec, k).unwrap()).min().unwrap();
        let exact = limit_points(&spec).liminf().clone();
        assert!((brute - exact).abs() < tiny, "{spec}");
    }
}

#[test]
fn markov_lengths_and_prefixes() {
    for n in 3..=18 {
        assert_eq!(markov_length(n), markov_length(n - 1) + 2 * markov_length(n - 2));
    }
    let long = markov_word(14).unwrap().word;
    for n in 2..=14 {
        let w = markov_word(n).unwrap().word;
        assert_eq!(w.len() as u64, markov_length(n));
        assert_eq!(&long[..w.len()], &w[..]);
    }
}

#[test]
fn lambda_sits_in_its_cylinders() {
    let (_, j) = delta_and_j();
    let mut previous_gamma = Rational::zero();
    for n in 1..=9 {
        let word = markov_word(n).unwrap().word;
        let doubled: Vec<u32> = word.iter().chain(&word).copied().collect();
        let once = AffineMap::word(&word).unwrap().map_interval(&j);
        let twice = AffineMap::word(&doubled).unwrap().map_interval(&j);
        let value = lambda_n(n).unwrap();
        assert!(twice.is_subset_of(&once));
        assert!(twice.contains(&value.value), "n = {n}");
        assert!(value.gamma > previous_gamma);
        previous_gamma = value.gamma;
    }
}

#[test]
fn interval_order_example() {
    let a = Interval::new(r(1, 5), r(4, 15)).unwrap();
    let b = Interval::new(r(3, 10), r(2, 5)).unwrap();
    let order = a.order(&b);
    assert!(order.precedes);
    assert_eq!(order.gap, Some(Interval::new(r(4, 15), r(3, 10)).unwrap()));
    assert_eq!(order.distance, r(1, 30));
}
