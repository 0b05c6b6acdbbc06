//! Column-stochastic link matrices and the damped Google matrix
//! `G = alpha * S + (1 - alpha) * E / N`.
//!
//! Dangling columns (nodes without out-links) are stored as a flag rather
//! than as `N` explicit `1/N` entries; [`GoogleMatrix::apply`] adds their
//! contribution as a rank-one correction so a product costs `O(edges + N)`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::format::g17;
use crate::netcore::DirectedGraph;
use crate::ranking::RankVector;

/// Largest dimension accepted for dense materialization by default.
pub const DEFAULT_DENSE_LIMIT: usize = 30_000;

/// Sparse column-stochastic matrix in compressed-column form.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix {
    n: usize,
    col_ptr: Vec<usize>,
    rows: Vec<usize>,
    values: Vec<f64>,
    dangling: Vec<bool>,
}

impl StochasticMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Explicit `(row, value)` entries of column `j`; empty for dangling columns.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.col_ptr[j]..self.col_ptr[j + 1];
        self.rows[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    pub fn is_dangling(&self, j: usize) -> bool {
        self.dangling[j]
    }

    pub fn dangling_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.dangling[j]).collect()
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Builds from per-column `(row, weight)` lists, normalizing each column
    /// to sum 1. Columns with no positive weight become dangling.
    fn from_weighted_columns(n: usize, columns: Vec<Vec<(usize, f64)>>) -> Self {
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut rows = Vec::new();
        let mut values = Vec::new();
        let mut dangling = vec![false; n];
        col_ptr.push(0);
        for (j, mut col) in columns.into_iter().enumerate() {
            col.sort_by_key(|&(i, _)| i);
            // merge repeated rows (link multiplicities)
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(col.len());
            for (i, w) in col {
                match merged.last_mut() {
                    Some((last, acc)) if *last == i => *acc += w,
                    _ => merged.push((i, w)),
                }
            }
            let total: f64 = merged.iter().map(|&(_, w)| w).sum();
            if total > 0.0 {
                for (i, w) in merged.into_iter().filter(|&(_, w)| w > 0.0) {
                    rows.push(i);
                    values.push(w / total);
                }
            } else {
                dangling[j] = true;
            }
            col_ptr.push(rows.len());
        }
        StochasticMatrix {
            n,
            col_ptr,
            rows,
            values,
            dangling,
        }
    }

    /// Writes explicit entries as `j,i,value` rows.
    pub fn write_triplets<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "j,i,value")?;
        for j in 0..self.n {
            for (i, v) in self.column(j) {
                writeln!(out, "{j},{i},{}", g17(v))?;
            }
        }
        Ok(())
    }
}

/// `S[i][j] = A[i][j] / out_degree(j)`, counting repeated links with their
/// multiplicity. Nodes without out-links become dangling columns.
pub fn build_stochastic(g: &DirectedGraph) -> Result<StochasticMatrix> {
    let n = g.n_nodes();
    if n == 0 {
        return Err(Error::InvalidGraph("graph has no nodes".into()));
    }
    let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for e in g.edges() {
        columns[e.src].push((e.dst, 1.0));
    }
    Ok(StochasticMatrix::from_weighted_columns(n, columns))
}

/// The Google matrix as an implicit operator.
#[derive(Debug, Clone, PartialEq)]
pub struct GoogleMatrix {
    s: StochasticMatrix,
    alpha: f64,
}

impl GoogleMatrix {
    pub fn new(s: StochasticMatrix, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::out_of_range("alpha", alpha, "[0, 1]"));
        }
        Ok(GoogleMatrix { s, alpha })
    }

    pub fn from_graph(g: &DirectedGraph, alpha: f64) -> Result<Self> {
        Self::new(build_stochastic(g)?, alpha)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.s.n
    }

    pub fn stochastic(&self) -> &StochasticMatrix {
        &self.s
    }

    /// Same link matrix at another damping value.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.s.clone(), alpha)
    }

    /// `G v` without forming `E` or the dangling columns.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.s.n];
        self.apply_into(v, &mut out)?;
        Ok(out)
    }

    pub fn apply_into(&self, v: &[f64], out: &mut [f64]) -> Result<()> {
        let n = self.s.n;
        for len in [v.len(), out.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, got: len });
            }
        }
        out.fill(0.0);
        let mut total = 0.0;
        let mut dangling_mass = 0.0;
        for (j, &vj) in v.iter().enumerate() {
            total += vj;
            if self.s.dangling[j] {
                dangling_mass += vj;
                continue;
            }
            for (i, s) in self.s.column(j) {
                out[i] += self.alpha * s * vj;
            }
        }
        let shift = (self.alpha * dangling_mass + (1.0 - self.alpha) * total) / n as f64;
        for x in out.iter_mut() {
            *x += shift;
        }
        Ok(())
    }

    /// Dense `N x N` form, refused above `limit`.
    pub fn materialize_dense(&self, limit: usize) -> Result<DenseMatrix> {
        let n = self.s.n;
        if n > limit {
            return Err(Error::SizeLimit { n, limit });
        }
        let teleport = (1.0 - self.alpha) / n as f64;
        let uniform = 1.0 / n as f64;
        let mut m = DenseMatrix::zeros(n);
        for j in 0..n {
            let col = &mut m.data[j * n..(j + 1) * n];
            if self.s.dangling[j] {
                col.fill(uniform);
                continue;
            }
            col.fill(teleport);
            for (i, s) in self.s.column(j) {
                col[i] += self.alpha * s;
            }
        }
        Ok(m)
    }

    /// Restricts to the `m` nodes of largest rank (ties to the lower id).
    ///
    /// Surviving columns of `S` are renormalized over the kept rows; a
    /// column left with no entries becomes dangling (uniform `1/m`).
    /// Returns the truncated operator and the kept original ids in
    /// ascending order; kept node `k` of the result is original node
    /// `kept[k]`.
    pub fn truncate_by_rank(&self, rank: &RankVector, m: usize) -> Result<(GoogleMatrix, Vec<usize>)> {
        let n = self.s.n;
        if rank.values.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: rank.values.len(),
            });
        }
        if m == 0 || m > n {
            return Err(Error::out_of_range("m", m, format!("[1, {n}]")));
        }
        let mut kept: Vec<usize> = rank.order[..m].to_vec();
        kept.sort_unstable();
        let mut new_id = vec![usize::MAX; n];
        for (k, &old) in kept.iter().enumerate() {
            new_id[old] = k;
        }
        let columns = kept
            .iter()
            .map(|&old| {
                if self.s.dangling[old] {
                    return Vec::new();
                }
                self.s
                    .column(old)
                    .filter(|&(i, _)| new_id[i] != usize::MAX)
                    .map(|(i, v)| (new_id[i], v))
                    .collect()
            })
            .collect();
        let s = StochasticMatrix::from_weighted_columns(m, columns);
        Ok((GoogleMatrix::new(s, self.alpha)?, kept))
    }
}

/// Square matrix stored column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for j in 0..n {
            for i in 0..n {
                m.data[j * n + i] = f(i, j);
            }
        }
        m
    }

    /// Builds from row-major nested rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.n + i]
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    /// Entries in column-major order.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.column(j).iter().sum()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let mut out = vec![0.0; self.n];
        for (j, &vj) in v.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.column(j)) {
                *o += a * vj;
            }
        }
        Ok(out)
    }

    /// Row-major CSV, full precision, no header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| g17(self.get(i, j))).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}
