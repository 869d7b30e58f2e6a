use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use widthcalc::fixtures;
use widthcalc::gen::{components, gen_complex, gen_move, restrict, shrink, GenConfig};
use widthcalc::{apply, thick_digraph, validate};

/// Thick-level count, then total genus and punctures of the thick levels.
fn size(c: &widthcalc::Complex) -> (usize, i64, i64) {
    let g = c.thick.iter().map(|t| t.surface.genus).sum();
    let p = c.thick.iter().map(|t| t.surface.punctures).sum();
    (c.thick.len(), g, p)
}

#[test]
fn ten_thousand_samples_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut with_thin, mut without_thin, mut multi) = (0, 0, 0);
    for _ in 0..10_000 {
        let c = gen_complex(&GenConfig::default(), &mut rng);
        let r = validate(&c);
        assert!(r.is_valid(), "{r}\n{}", c.to_json());
        assert!(thick_digraph(&c).is_acyclic());
        if c.thin.is_empty() {
            without_thin += 1;
        } else {
            with_thin += 1;
        }
        if components(&c).len() > 1 {
            multi += 1;
        }
    }
    assert!(with_thin > 0 && without_thin > 0 && multi > 0, "{with_thin} {without_thin} {multi}");
}

#[test]
fn single_level_without_graph() {
    let cfg = GenConfig { max_thick: 1, max_punctures: 0, allow_boundary: false, ..GenConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..50 {
        let c = gen_complex(&cfg, &mut rng);
        assert_eq!(c.thick.len(), 1);
        assert!(c.cbs.iter().all(|cb| cb.minus.is_empty()));
    }
}

#[test]
fn four_levels_are_acyclic() {
    let cfg = GenConfig { max_thick: 4, ..GenConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut seen_four = false;
    for _ in 0..200 {
        let c = gen_complex(&cfg, &mut rng);
        seen_four |= c.thick.len() == 4;
        assert!(validate(&c).is_valid());
    }
    assert!(seen_four);
}

#[test]
fn generated_moves_apply() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let mut found = 0;
    for _ in 0..1000 {
        let c = gen_complex(&GenConfig::default(), &mut rng);
        if let Some(m) = gen_move(&c, &mut rng) {
            found += 1;
            assert!(apply(&c, &m).is_ok(), "{m}");
        }
    }
    assert!(found > 500, "{found}");
    assert!(gen_move(&fixtures::heegaard(0), &mut rng).is_none());
}

#[test]
fn shrink_candidates_are_valid_and_smaller() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..1000 {
        let c = gen_complex(&GenConfig::default(), &mut rng);
        for s in shrink(&c) {
            assert!(validate(&s).is_valid(), "{}", validate(&s));
            assert!(size(&s) < size(&c));
        }
    }
}

#[test]
fn shrinking_four_levels_reaches_three() {
    let c = fixtures::chain(4);
    assert!(shrink(&c).iter().any(|s| s.thick.len() == 3));
    assert!(shrink(&fixtures::heegaard(0)).is_empty());
}

#[test]
fn restriction_to_a_component() {
    let c = fixtures::independent_pair();
    let parts = components(&c);
    assert_eq!(parts.len(), 2);
    let keep: BTreeSet<String> = parts[0].clone();
    let r = restrict(&c, &keep).unwrap();
    assert_eq!(r.thick.len(), 1);
    assert!(validate(&r).is_valid());
}
