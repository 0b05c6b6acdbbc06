#![allow(dead_code)]

use std::collections::BTreeSet;

use gspectra::{DirectedGraph, Edge};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Simple directed graphs with up to `max_nodes` nodes; self-loops allowed.
pub fn graph(max_nodes: usize) -> impl Strategy<Value = DirectedGraph> {
    (2..=max_nodes).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..4 * n).prop_map(move |pairs| {
            let unique: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
            DirectedGraph::new(n, unique.into_iter().map(Edge::from).collect()).unwrap()
        })
    })
}

/// Directed Erdős-Rényi graph without self-loops, each link present with
/// probability `mean_degree / (n - 1)`.
pub fn random_digraph(n: usize, mean_degree: f64, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = mean_degree / (n - 1) as f64;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random::<f64>() < p {
                edges.push(Edge::new(i, j));
            }
        }
    }
    DirectedGraph::new(n, edges).unwrap()
}

/// Complete directed graph without self-loops.
pub fn complete(n: usize) -> DirectedGraph {
    let edges = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| Edge::new(i, j)))
        .collect();
    DirectedGraph::new(n, edges).unwrap()
}
