//! Shared inputs for the benchmarks.

use rand::rngs::StdRng;
use rand::SeedableRng;
use slowcolor::generate::{bfs_relabel, random_forest};
use slowcolor::Forest;

/// Random forest with fixed seed, vertices in BFS order.
pub fn bench_forest(n: usize, seed: u64) -> Forest {
    bfs_relabel(&random_forest(n, 0.9, &mut StdRng::seed_from_u64(seed)))
}
