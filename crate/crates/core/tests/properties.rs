//! Randomized properties over generated complexes.

mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use widthcalc::gen::{gen_complex, gen_move, GenConfig};
use widthcalc::{apply, canonical_hash, compare, complexity, validate, Complex, ComplexityVector};

fn complex_strategy() -> impl Strategy<Value = Complex> {
    any::<u64>().prop_map(|seed| gen_complex(&GenConfig::default(), &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn vector_strategy() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((0i64..20).prop_map(|x| 2 * x), 0..6).prop_map(|mut v| {
        v.sort_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_complexes_are_valid(c in complex_strategy()) {
        prop_assert!(validate(&c).is_valid());
    }

    #[test]
    fn round_trip(c in complex_strategy()) {
        prop_assert_eq!(Complex::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn indices_are_even_and_non_negative(c in complex_strategy()) {
        for t in &c.thick {
            let (u, d) = (common::upper_index(&c, &t.id), common::lower_index(&c, &t.id));
            prop_assert!(u >= 0 && d >= 0 && u % 2 == 0 && d % 2 == 0);
        }
        prop_assert_eq!(complexity(&c).unwrap().terms, common::vector(&c));
    }

    #[test]
    fn every_cb_index_is_even(c in complex_strategy()) {
        for cb in &c.cbs {
            let m = common::cb_mu(&c, &cb.id);
            prop_assert!(m >= 0 && m % 2 == 0);
        }
    }

    #[test]
    fn accepted_moves_decrease(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = gen_complex(&GenConfig::default(), &mut rng);
        if let Some(m) = gen_move(&c, &mut rng) {
            let out = apply(&c, &m).unwrap().complex;
            prop_assert!(validate(&out).is_valid());
            prop_assert_eq!(common::naive_compare(&common::vector(&out), &common::vector(&c)), Ordering::Less);
        }
    }

    #[test]
    fn reversal_duality(c in complex_strategy()) {
        let r = c.reversed();
        for t in &c.thick {
            prop_assert_eq!(common::upper_index(&c, &t.id), common::lower_index(&r, &t.id));
        }
        prop_assert_eq!(common::vector(&c), common::vector(&r));
    }

    #[test]
    fn hash_ignores_labels(c in complex_strategy(), seed in any::<u64>()) {
        let d = common::relabel(&c, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(canonical_hash(&d), canonical_hash(&c));
    }

    #[test]
    fn compare_is_a_total_order(a in vector_strategy(), b in vector_strategy(), c in vector_strategy()) {
        let v = |x: &Vec<i64>| ComplexityVector::new(x.clone());
        let (ab, ba) = (compare(&v(&a), &v(&b)), compare(&v(&b), &v(&a)));
        prop_assert_eq!(ab, ba.reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab != Ordering::Greater && compare(&v(&b), &v(&c)) != Ordering::Greater {
            prop_assert_ne!(compare(&v(&a), &v(&c)), Ordering::Greater);
        }
        prop_assert_eq!(ab, common::naive_compare(&a, &b));
    }

    #[test]
    fn removing_a_term_makes_a_vector_smaller(a in vector_strategy(), i in any::<prop::sample::Index>()) {
        prop_assume!(!a.is_empty());
        let mut shorter = a.clone();
        shorter.remove(i.index(a.len()));
        let v = |x: &Vec<i64>| ComplexityVector::new(x.clone());
        prop_assert_eq!(compare(&v(&shorter), &v(&a)), Ordering::Less);
    }
}
