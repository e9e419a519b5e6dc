//! Seeded random graphs for benchmarks and oracle cross-checks.

use crate::bits::VertexSet;
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi G(n, p), deterministic for a given seed.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    let threshold = (p * 2f64.powi(64)) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![VertexSet::empty(n); n];
    for j in 1..n {
        for i in 0..j {
            let draw = rng.random::<u64>();
            if p >= 1.0 || draw < threshold {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    Graph::from_adjacency_unchecked(adj)
}

pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
