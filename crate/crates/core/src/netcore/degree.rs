use std::collections::{BTreeMap, HashSet};
use std::io::Write;

use super::graph::{DirectedGraph, Edge};
use crate::error::{Error, Result};
use crate::format::g17;
use crate::stats::least_squares_slope;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

/// Degree histogram with its complementary cumulative distribution
/// `P_c(k) = #{nodes with degree >= k} / N`, tabulated at observed degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    pub direction: Direction,
    pub n_nodes: usize,
    pub counts: BTreeMap<usize, usize>,
    pub cumulative: BTreeMap<usize, f64>,
    pub mean_degree: f64,
}

impl DegreeDistribution {
    /// `k,count,cumulative_fraction` rows in increasing `k`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "k,count,cumulative_fraction")?;
        for (k, c) in &self.counts {
            writeln!(out, "{k},{c},{}", g17(self.cumulative[k]))?;
        }
        Ok(())
    }
}

pub fn degree_distribution(g: &DirectedGraph, direction: Direction) -> DegreeDistribution {
    let degrees = match direction {
        Direction::In => g.in_degrees(),
        Direction::Out => g.out_degrees(),
    };
    let n = g.n_nodes();
    let mut counts = BTreeMap::new();
    for &d in &degrees {
        *counts.entry(d).or_insert(0usize) += 1;
    }
    let mut cumulative = BTreeMap::new();
    let mut at_least = n;
    for (&k, &c) in &counts {
        cumulative.insert(k, at_least as f64 / n as f64);
        at_least -= c;
    }
    let mean_degree = if n == 0 { 0.0 } else { g.n_edges() as f64 / n as f64 };
    DegreeDistribution {
        direction,
        n_nodes: n,
        counts,
        cumulative,
        mean_degree,
    }
}

/// Least-squares slope of `log10 P_c(k)` against `log10 k` for
/// `k_min <= k <= k_max`, using only `k > 0` with nonzero `P_c`.
pub fn fit_loglog_slope(dist: &DegreeDistribution, k_min: usize, k_max: usize) -> Result<f64> {
    let points: Vec<(f64, f64)> = dist
        .cumulative
        .range(k_min.max(1)..=k_max.max(k_min))
        .filter(|(_, &p)| p > 0.0)
        .map(|(&k, &p)| ((k as f64).log10(), p.log10()))
        .collect();
    if points.len() < 3 {
        return Err(Error::Fit {
            needed: 3,
            found: points.len(),
        });
    }
    Ok(least_squares_slope(&points))
}

/// Fit over the default window `[3, k_max / 4]`.
pub fn fit_loglog_slope_default(dist: &DegreeDistribution) -> Result<f64> {
    let k_max = dist.cumulative.keys().next_back().copied().unwrap_or(0);
    fit_loglog_slope(dist, 3, k_max / 4)
}

/// Fraction of non-loop edges `u -> v` whose reverse `v -> u` also exists.
///
/// Returns 0 for graphs without non-loop edges.
pub fn reciprocity(g: &DirectedGraph) -> f64 {
    let present: HashSet<Edge> = g.edges().iter().copied().collect();
    let mut total = 0usize;
    let mut mutual = 0usize;
    for e in g.edges().iter().filter(|e| e.src != e.dst) {
        total += 1;
        if present.contains(&Edge::new(e.dst, e.src)) {
            mutual += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        mutual as f64 / total as f64
    }
}
