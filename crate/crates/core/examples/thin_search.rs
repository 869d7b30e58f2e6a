//! Thins random instances until no proposed move applies.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use widthcalc::gen::{gen_complex, GenConfig};
use widthcalc::search::{thin, ExhaustiveProposer, Policy, DEFAULT_CAP};

fn main() -> widthcalc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let proposer = ExhaustiveProposer::default();
    for _ in 0..5 {
        let c = gen_complex(&GenConfig::default(), &mut rng);
        let (end, trace) = thin(&c, &proposer, Policy::Greedy, DEFAULT_CAP)?;
        let kinds: Vec<&str> = trace.steps.iter().map(|s| s.applied.kind()).collect();
        println!("{} -> {} in {} steps {kinds:?}", trace.initial, trace.steps.last().map_or(&trace.initial, |s| &s.vector), trace.steps.len());
        assert!(!end.thick.is_empty());
    }
    Ok(())
}
