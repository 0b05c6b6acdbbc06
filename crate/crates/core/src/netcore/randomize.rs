use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::{DirectedGraph, Edge};
use crate::error::{Error, Result};

/// Ten attempted swaps per edge.
pub fn default_swap_count(g: &DirectedGraph) -> usize {
    10 * g.n_edges()
}

/// Degree-preserving rewiring that never creates new self-loops.
pub fn maslov_randomize(g: &DirectedGraph, n_swaps: usize, seed: u64) -> Result<DirectedGraph> {
    maslov_randomize_with(g, n_swaps, seed, false)
}

/// Degree-preserving rewiring by source exchange.
///
/// Each of the `n_swaps` attempts draws two distinct edges `(a, b)` and
/// `(c, d)` and replaces them by `(c, b)` and `(a, d)`. Attempts that would
/// duplicate an existing edge, or create a self-loop when `allow_self_loops`
/// is false, are skipped and still count. Edge positions are kept, so the
/// in- and out-degree of every node is unchanged.
pub fn maslov_randomize_with(
    g: &DirectedGraph,
    n_swaps: usize,
    seed: u64,
    allow_self_loops: bool,
) -> Result<DirectedGraph> {
    if g.multi_edges_allowed() {
        return Err(Error::InvalidGraph("rewiring requires a simple graph".into()));
    }
    if g.n_edges() < 2 {
        return Err(Error::InvalidGraph(format!(
            "rewiring needs at least 2 edges, graph has {}",
            g.n_edges()
        )));
    }
    let mut edges = g.edges().to_vec();
    let mut present: HashSet<Edge> = edges.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = edges.len();

    for _ in 0..n_swaps {
        let i = rng.random_range(0..m);
        let mut j = rng.random_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let Edge { src: a, dst: b } = edges[i];
        let Edge { src: c, dst: d } = edges[j];
        let first = Edge::new(c, b);
        let second = Edge::new(a, d);
        if !allow_self_loops && (c == b || a == d) {
            continue;
        }
        if present.contains(&first) || present.contains(&second) {
            continue;
        }
        present.remove(&edges[i]);
        present.remove(&edges[j]);
        present.insert(first);
        present.insert(second);
        edges[i] = first;
        edges[j] = second;
    }

    let (n, _, multi, labels) = g.clone().into_parts();
    let out = DirectedGraph::from_parts_unchecked(n, edges, multi, labels);
    assert_eq!(out.out_degrees(), g.out_degrees(), "out-degrees changed");
    assert_eq!(out.in_degrees(), g.in_degrees(), "in-degrees changed");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_swaps_is_identity() {
        let g = DirectedGraph::from_pairs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(maslov_randomize(&g, 0, 9).unwrap(), g);
    }

    #[test]
    fn single_swap_on_two_edges() {
        // both possible draws of the ordered pair lead to the same result
        let g = DirectedGraph::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        for seed in 0..8 {
            let r = maslov_randomize(&g, 1, seed).unwrap();
            assert_eq!(r.edges(), &[Edge::new(2, 1), Edge::new(0, 3)]);
        }
    }

    #[test]
    fn skips_swaps_creating_self_loops() {
        // swapping (0,1),(1,0) would give (1,1),(0,0)
        let g = DirectedGraph::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(maslov_randomize(&g, 50, 1).unwrap(), g);
        let looped = maslov_randomize_with(&g, 1, 1, true).unwrap();
        assert_eq!(looped.edges(), &[Edge::new(1, 1), Edge::new(0, 0)]);
    }

    #[test]
    fn preconditions() {
        let one = DirectedGraph::from_pairs(2, &[(0, 1)]).unwrap();
        assert!(maslov_randomize(&one, 1, 0).is_err());
        let multi = DirectedGraph::new_multi(3, vec![Edge::new(0, 1), Edge::new(0, 1), Edge::new(1, 2)]).unwrap();
        assert!(maslov_randomize(&multi, 1, 0).is_err());
    }

    #[test]
    fn deterministic_for_seed() {
        let pairs: Vec<_> = (0..20).map(|i| (i, (i * 7 + 3) % 20)).collect();
        let g = DirectedGraph::from_pairs(20, &pairs).unwrap();
        let a = maslov_randomize(&g, 200, 42).unwrap();
        let b = maslov_randomize(&g, 200, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, g);
    }
}
