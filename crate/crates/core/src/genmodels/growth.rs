use std::collections::HashSet;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::params::{AbParams, ColorParams, ForbiddenLink};
use crate::error::Result;
use crate::netcore::{write_edge_list, DirectedGraph, Edge};

/// A generated graph with one color label per node.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    pub graph: DirectedGraph,
    pub colors: Vec<usize>,
    pub n_colors: usize,
}

/// Grows an Albert-Barabási network until it has `params.n_target` nodes.
pub fn generate_ab(params: &AbParams) -> Result<DirectedGraph> {
    params.validate(params.m + 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut state = Growth::new(params);
    state.seed_clique(0, params.m + 1, params.bidirectional_seed);
    state.grow(&mut rng, false, |_, _, _| true, |_| {});
    DirectedGraph::new(state.n, state.edges)
}

/// Grows a color-model network.
///
/// Each initial color starts from its own seed clique, so with
/// `epsilon == 0` the color classes never link to each other. Under
/// [`ForbiddenLink::Redraw`] every member of an initial color keeps at least
/// one link inside it, which makes each initial color a closed class of the
/// link matrix.
pub fn generate_color(params: &ColorParams) -> Result<ColoredGraph> {
    params.validate()?;
    let ab = &params.ab;
    let mut rng = ChaCha8Rng::seed_from_u64(ab.seed);
    let mut state = Growth::new(ab);
    let clique = ab.m + 1;
    let mut colors = Vec::with_capacity(ab.n_target);
    for c in 0..params.initial_colors {
        state.seed_clique(c * clique, clique, ab.bidirectional_seed);
        colors.extend(std::iter::repeat(c).take(clique));
    }
    let mut n_colors = params.initial_colors;

    // The color of a new node is drawn before its links, so the link filter
    // below already sees it.
    let colors = std::cell::RefCell::new(colors);
    state.grow(
        &mut rng,
        params.forbidden == ForbiddenLink::Redraw,
        |src, dst, rng: &mut ChaCha8Rng| {
            let colors = colors.borrow();
            colors[src] == colors[dst] || rng.random::<f64>() < params.epsilon
        },
        |rng: &mut ChaCha8Rng| {
            let mut colors = colors.borrow_mut();
            let c = if rng.random::<f64>() < params.eta {
                n_colors += 1;
                n_colors - 1
            } else {
                colors[rng.random_range(0..colors.len())]
            };
            colors.push(c);
        },
    );
    let graph = DirectedGraph::new(state.n, state.edges)?;
    Ok(ColoredGraph {
        graph,
        colors: colors.into_inner(),
        n_colors,
    })
}

/// Writes the edge list followed by one `# color <node> <color>` line per node.
pub fn write_colored_edge_list<W: Write>(cg: &ColoredGraph, mut out: W) -> Result<()> {
    write_edge_list(&cg.graph, &mut out)?;
    for (node, c) in cg.colors.iter().enumerate() {
        writeln!(out, "# color {node} {c}")?;
    }
    Ok(())
}

struct Growth {
    n: usize,
    n_target: usize,
    m: usize,
    p: f64,
    q: f64,
    allow_self_loops: bool,
    max_retries: usize,
    edges: Vec<Edge>,
    present: HashSet<Edge>,
}

impl Growth {
    fn new(params: &AbParams) -> Self {
        Growth {
            n: 0,
            n_target: params.n_target,
            m: params.m,
            p: params.p,
            q: params.q,
            allow_self_loops: params.allow_self_loops,
            max_retries: params.max_retries,
            edges: Vec::new(),
            present: HashSet::new(),
        }
    }

    fn seed_clique(&mut self, first: usize, size: usize, bidirectional: bool) {
        self.n = self.n.max(first + size);
        if size < 2 {
            return;
        }
        for i in first..first + size {
            if bidirectional {
                for j in first..first + size {
                    if i != j {
                        self.push(Edge::new(i, j));
                    }
                }
            } else {
                let next = if i + 1 == first + size { first } else { i + 1 };
                self.push(Edge::new(i, next));
            }
        }
    }

    fn push(&mut self, e: Edge) {
        self.present.insert(e);
        self.edges.push(e);
    }

    /// Node drawn with probability proportional to in-degree + 1: a uniform
    /// slot among all nodes and all edge heads.
    fn preferential(&self, rng: &mut ChaCha8Rng) -> usize {
        let r = rng.random_range(0..self.n + self.edges.len());
        if r < self.n {
            r
        } else {
            self.edges[r - self.n].dst
        }
    }

    fn acceptable(&self, e: Edge) -> bool {
        (self.allow_self_loops || e.src != e.dst) && !self.present.contains(&e)
    }

    /// Draws candidates until one is structurally acceptable and passes
    /// `keep`. A candidate failing `keep` ends the search unless `redraw` is set.
    fn draw<K>(
        &self,
        rng: &mut ChaCha8Rng,
        redraw: bool,
        keep: &mut K,
        mut candidate: impl FnMut(&mut ChaCha8Rng) -> Edge,
    ) -> Option<Edge>
    where
        K: FnMut(usize, usize, &mut ChaCha8Rng) -> bool,
    {
        for _ in 0..=self.max_retries {
            let e = candidate(rng);
            if !self.acceptable(e) {
                continue;
            }
            if keep(e.src, e.dst, rng) {
                return Some(e);
            }
            if !redraw {
                return None;
            }
        }
        None
    }

    fn grow<K, C>(&mut self, rng: &mut ChaCha8Rng, redraw: bool, mut keep: K, mut on_new_node: C)
    where
        K: FnMut(usize, usize, &mut ChaCha8Rng) -> bool,
        C: FnMut(&mut ChaCha8Rng),
    {
        while self.n < self.n_target {
            let u: f64 = rng.random();
            if u < self.p {
                for _ in 0..self.m {
                    let n = self.n;
                    let e = self.draw(rng, redraw, &mut keep, |rng| {
                        let src = rng.random_range(0..n);
                        Edge::new(src, self.preferential(rng))
                    });
                    if let Some(e) = e {
                        self.push(e);
                    }
                }
            } else if u < self.p + self.q {
                for _ in 0..self.m {
                    if self.edges.is_empty() {
                        break;
                    }
                    let mut slot = 0;
                    let e = self.draw(rng, redraw, &mut keep, |rng| {
                        slot = rng.random_range(0..self.edges.len());
                        Edge::new(self.edges[slot].src, self.preferential(rng))
                    });
                    if let Some(e) = e {
                        self.present.remove(&self.edges[slot]);
                        self.present.insert(e);
                        self.edges[slot] = e;
                    }
                }
            } else {
                on_new_node(rng);
                let src = self.n;
                self.n += 1;
                for _ in 0..self.m {
                    let e = self.draw(rng, redraw, &mut keep, |rng| Edge::new(src, self.preferential(rng)));
                    if let Some(e) = e {
                        self.push(e);
                    }
                }
            }
        }
    }
}
