//! Shared inputs for the criterion benchmarks.

use std::sync::Arc;

use thinloop::random::{random_loop_with, WordRng};
use thinloop::{fixtures, PlWord, SimplicialComplex};

/// `count` seeded random loops of `steps` walk steps on `complex`.
pub fn corpus(
    complex: &Arc<SimplicialComplex>,
    count: usize,
    steps: usize,
    seed: u64,
) -> Vec<PlWord> {
    let mut rng = WordRng::new(seed);
    (0..count)
        .map(|_| random_loop_with(complex, steps, 2, &mut rng))
        .collect()
}

pub fn hollow3() -> Arc<SimplicialComplex> {
    Arc::new(fixtures::hollow3())
}

pub fn filled3() -> Arc<SimplicialComplex> {
    Arc::new(fixtures::filled3())
}
