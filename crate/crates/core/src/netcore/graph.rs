use std::collections::HashSet;

use crate::error::{Error, Result};

/// A directed link `src -> dst`, i.e. a nonzero `A[dst][src]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
}

impl Edge {
    pub fn new(src: usize, dst: usize) -> Self {
        Edge { src, dst }
    }
}

impl From<(usize, usize)> for Edge {
    fn from((src, dst): (usize, usize)) -> Self {
        Edge { src, dst }
    }
}

/// Node count plus an ordered multiset of directed edges.
///
/// Immutable once built. Edge order is preserved from construction so that
/// serialization round-trips exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    n_nodes: usize,
    edges: Vec<Edge>,
    multi_edges: bool,
    labels: Option<Vec<String>>,
}

impl DirectedGraph {
    /// Builds a simple graph; duplicate `(src, dst)` pairs are rejected.
    pub fn new(n_nodes: usize, edges: Vec<Edge>) -> Result<Self> {
        Self::build(n_nodes, edges, false)
    }

    /// Builds a graph in which repeated edges are kept as multiplicities.
    pub fn new_multi(n_nodes: usize, edges: Vec<Edge>) -> Result<Self> {
        Self::build(n_nodes, edges, true)
    }

    pub fn from_pairs(n_nodes: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n_nodes, pairs.iter().copied().map(Edge::from).collect())
    }

    fn build(n_nodes: usize, edges: Vec<Edge>, multi_edges: bool) -> Result<Self> {
        if let Some(e) = edges.iter().find(|e| e.src >= n_nodes || e.dst >= n_nodes) {
            return Err(Error::InvalidGraph(format!(
                "edge {} -> {} references a node outside [0, {n_nodes})",
                e.src, e.dst
            )));
        }
        if !multi_edges {
            let mut seen = HashSet::with_capacity(edges.len());
            if let Some(e) = edges.iter().find(|e| !seen.insert(**e)) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {} -> {} in a simple graph",
                    e.src, e.dst
                )));
            }
        }
        Ok(DirectedGraph {
            n_nodes,
            edges,
            multi_edges,
            labels: None,
        })
    }

    /// Attaches one opaque label per node.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n_nodes {
            return Err(Error::DimensionMismatch {
                expected: self.n_nodes,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn multi_edges_allowed(&self) -> bool {
        self.multi_edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_nodes];
        for e in &self.edges {
            deg[e.src] += 1;
        }
        deg
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_nodes];
        for e in &self.edges {
            deg[e.dst] += 1;
        }
        deg
    }

    /// Number of nodes with zero out-degree.
    pub fn dangling_count(&self) -> usize {
        self.out_degrees().iter().filter(|&&d| d == 0).count()
    }

    pub(crate) fn into_parts(self) -> (usize, Vec<Edge>, bool, Option<Vec<String>>) {
        (self.n_nodes, self.edges, self.multi_edges, self.labels)
    }

    pub(crate) fn from_parts_unchecked(
        n_nodes: usize,
        edges: Vec<Edge>,
        multi_edges: bool,
        labels: Option<Vec<String>>,
    ) -> Self {
        DirectedGraph {
            n_nodes,
            edges,
            multi_edges,
            labels,
        }
    }
}

/// Old-to-new node id map produced by node-removing filters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeMapping {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl NodeMapping {
    pub fn new_id(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn old_id(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn kept(&self) -> &[usize] {
        &self.new_to_old
    }
}

/// Drops every node without outgoing links, in a single pass.
///
/// Edges into removed nodes go with them, so survivors may become dangling;
/// the filter is intentionally not iterated to a fixpoint.
pub fn filter_min_outdegree(g: &DirectedGraph) -> Result<(DirectedGraph, NodeMapping)> {
    let out = g.out_degrees();
    let mut old_to_new = vec![None; g.n_nodes()];
    let mut new_to_old = Vec::new();
    for (old, &d) in out.iter().enumerate() {
        if d > 0 {
            old_to_new[old] = Some(new_to_old.len());
            new_to_old.push(old);
        }
    }
    if new_to_old.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let edges = g
        .edges()
        .iter()
        .filter_map(|e| match (old_to_new[e.src], old_to_new[e.dst]) {
            (Some(s), Some(d)) => Some(Edge::new(s, d)),
            _ => None,
        })
        .collect();
    let labels = g.labels().map(|l| new_to_old.iter().map(|&o| l[o].clone()).collect());
    let filtered = DirectedGraph::from_parts_unchecked(new_to_old.len(), edges, g.multi_edges_allowed(), labels);
    Ok((filtered, NodeMapping { old_to_new, new_to_old }))
}
