mod common;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use widthcalc::fixtures::{self, Builder};
use widthcalc::gen::{gen_complex, GenConfig};
use widthcalc::moves::is_reduced;
use widthcalc::search::{
    rewrite_graph, thin, EmptyProposer, ExhaustiveProposer, MoveProposer, Policy, ScriptedProposer, DEFAULT_CAP,
};
use widthcalc::{canonical_hash, Error, Move, Surface};

#[test]
fn thin_input_gives_an_empty_trace() {
    let (end, trace) = thin(&fixtures::one_bridge_sphere(), &EmptyProposer, Policy::First, DEFAULT_CAP).unwrap();
    assert!(trace.steps.is_empty() && trace.terminal);
    assert_eq!(end, fixtures::one_bridge_sphere());
}

#[test]
fn scripted_spherical_thinning() {
    let c = fixtures::spherical_untelescoping();
    let proposer = ScriptedProposer::new(vec![Move::ThinningSequence(fixtures::spherical_thinning_move())]);
    let (end, trace) = thin(&c, &proposer, Policy::First, DEFAULT_CAP).unwrap();
    assert!(!trace.steps.is_empty());
    assert!(trace.is_strictly_decreasing());
    assert_eq!((end.thick.len(), end.thin.len()), (2, 1));
}

#[test]
fn cap_zero_on_unreduced_input() {
    let r = thin(&fixtures::consolidation_pair(), &EmptyProposer, Policy::First, 0);
    assert!(matches!(r, Err(Error::CapReached(0))));
}

#[test]
fn random_runs_terminate_in_few_steps() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let proposer = ExhaustiveProposer::default();
    for policy in [Policy::First, Policy::Greedy] {
        for _ in 0..40 {
            let c = gen_complex(&GenConfig::default(), &mut rng);
            let bound = 1 + common::vector(&c).iter().sum::<i64>() as usize;
            let (end, trace) = thin(&c, &proposer, policy, bound).unwrap();
            assert!(trace.terminal && trace.is_strictly_decreasing());
            assert!(is_reduced(&end, &proposer.propose(&end)).0);
        }
    }
}

#[test]
fn greedy_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let c = gen_complex(&GenConfig::default(), &mut rng);
    let p = ExhaustiveProposer::default();
    let a = thin(&c, &p, Policy::Greedy, DEFAULT_CAP).unwrap();
    let b = thin(&c, &p, Policy::Greedy, DEFAULT_CAP).unwrap();
    assert_eq!(canonical_hash(&a.0), canonical_hash(&b.0));
    assert_eq!(a.1.steps.len(), b.1.steps.len());
}

#[test]
fn single_node_graph_for_reduced_input() {
    let g = rewrite_graph(&fixtures::one_bridge_sphere(), &EmptyProposer, 5, 100).unwrap();
    assert_eq!(g.nodes.len(), 1);
    assert!(g.edges.is_empty() && !g.incomplete);
}

/// Two separate chains, each with a product to remove: the two orders meet
/// again in a single sink.
#[test]
fn independent_consolidations_are_confluent() {
    let c = Builder::new()
        .thick("A0", Surface::new(2, 0))
        .thick("A1", Surface::new(1, 0))
        .thin("FA", Surface::new(1, 0), "A0", "A1")
        .thick("B0", Surface::new(3, 0))
        .thick("B1", Surface::new(1, 0))
        .thin("FB", Surface::new(1, 0), "B0", "B1")
        .build();
    let g = rewrite_graph(&c, &EmptyProposer, 8, 100).unwrap();
    assert!(!g.incomplete);
    assert_eq!(g.sinks().len(), 1);
    assert!(g.nodes.len() >= 4, "{}", g.nodes.len());
    assert!(g.every_node_reaches_a_sink());
}

#[test]
fn graphs_are_acyclic_and_strictly_decreasing() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let cfg = GenConfig { max_thick: 2, ..GenConfig::default() };
    for _ in 0..20 {
        let c = gen_complex(&cfg, &mut rng);
        let g = rewrite_graph(&c, &ExhaustiveProposer::default(), 6, 120).unwrap();
        let nodes: BTreeSet<String> = g.nodes.keys().cloned().collect();
        let edges: Vec<(String, String)> = g.edges.iter().map(|e| (e.from.clone(), e.to.clone())).collect();
        assert!(!common::has_cycle(&nodes, &edges));
        assert!(g.is_acyclic());
        for e in &g.edges {
            let (a, b) = (&g.nodes[&e.from].vector.terms, &g.nodes[&e.to].vector.terms);
            assert_eq!(common::naive_compare(b, a), Ordering::Less);
        }
    }
}

#[test]
fn hash_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let c = fixtures::diamond();
    assert_eq!(canonical_hash(&common::relabel(&c, &mut rng)), canonical_hash(&c));
    assert_ne!(canonical_hash(&fixtures::heegaard(1)), canonical_hash(&fixtures::heegaard(2)));
}
