//! Seeded inputs shared by the benchmarks.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treebetween::{random_tree, Tree};

/// Uniform random tree on `0..n`, reproducible from `seed`.
pub fn seeded_tree(n: usize, seed: u64) -> Tree {
    random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed))
}
