//! Random valid instances, and the shrinker used to minimize failures.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use widthcalc::gen::{gen_complex, gen_move, shrink, GenConfig};
use widthcalc::{complexity, validate};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = gen_complex(&GenConfig::wide(), &mut rng);
    assert!(validate(&c).is_valid());
    println!("{}", c.to_json());
    println!("complexity {}", complexity(&c).unwrap());
    match gen_move(&c, &mut rng) {
        Some(m) => println!("an applicable move: {m}"),
        None => println!("no applicable move"),
    }
    println!("{} shrink candidates", shrink(&c).len());
}
