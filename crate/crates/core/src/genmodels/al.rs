use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::params::AlParams;
use crate::error::Result;
use crate::netcore::{DirectedGraph, Edge};

/// Grows an Avrachenkov-Lebedev multigraph.
///
/// The `m + 1` seed nodes link to each other. Every later node sends exactly
/// `m` links to earlier nodes, each drawn independently with probability
/// proportional to `in_degree + 1` as it stood before the node arrived.
/// Repeated targets are kept as parallel edges.
pub fn generate_al(params: &AlParams) -> Result<DirectedGraph> {
    params.validate()?;
    let m = params.m;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut edges = Vec::with_capacity(params.n_target * m);
    for i in 0..=m {
        for j in 0..=m {
            if i != j {
                edges.push(Edge::new(i, j));
            }
        }
    }
    for src in m + 1..params.n_target {
        let pool = src + edges.len();
        for _ in 0..m {
            let r = rng.random_range(0..pool);
            let dst = if r < src { r } else { edges[r - src].dst };
            edges.push(Edge::new(src, dst));
        }
    }
    DirectedGraph::new_multi(params.n_target, edges)
}
