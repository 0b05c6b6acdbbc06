//! PageRank and the observables built on it: participation ratio, its
//! dependence on the damping factor, algebraic decay of sorted scores, and
//! the fidelity between rankings at two damping values.

use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format::g17;
use crate::gmatrix::GoogleMatrix;
use crate::netcore::DirectedGraph;
use crate::stats::least_squares_slope;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Largest system handed to the dense linear solver.
pub const DENSE_SOLVE_LIMIT: usize = 2_000;

/// An L1-normalized PageRank vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    pub values: Vec<f64>,
    pub alpha: f64,
    pub iterations: usize,
    /// L1 change of the last iteration (0 for direct solves).
    pub residual: f64,
    pub converged: bool,
    /// Node ids by decreasing score, ties to the lower id.
    pub order: Vec<usize>,
}

impl RankVector {
    fn new(mut values: Vec<f64>, alpha: f64, iterations: usize, residual: f64, converged: bool) -> Self {
        let total: f64 = values.iter().sum();
        for v in values.iter_mut() {
            *v /= total;
        }
        let order = rank_order(&values);
        RankVector {
            values,
            alpha,
            iterations,
            residual,
            converged,
            order,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Scores in rank order, `sorted()[0]` being the top node.
    pub fn sorted(&self) -> Vec<f64> {
        self.order.iter().map(|&i| self.values[i]).collect()
    }

    /// `node_id,score,rank_position` rows; positions start at 1.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let mut position = vec![0; self.values.len()];
        for (pos, &node) in self.order.iter().enumerate() {
            position[node] = pos + 1;
        }
        writeln!(out, "node_id,score,rank_position")?;
        for (node, &score) in self.values.iter().enumerate() {
            writeln!(out, "{node},{},{}", g17(score), position[node])?;
        }
        Ok(())
    }
}

fn rank_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    order
}

/// Power iteration from the uniform vector until the L1 change drops below
/// `tol` or `max_iter` products have been taken.
///
/// Hitting `max_iter` is not an error: the result carries
/// `converged == false`.
pub fn pagerank_power(g: &GoogleMatrix, tol: f64, max_iter: usize) -> RankVector {
    let n = g.dim();
    let mut v = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < max_iter {
        g.apply_into(&v, &mut next).expect("dimensions agree");
        let total: f64 = next.iter().sum();
        for x in next.iter_mut() {
            *x /= total;
        }
        residual = v.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut v, &mut next);
        iterations += 1;
        if residual < tol {
            break;
        }
    }
    RankVector::new(v, g.alpha(), iterations, residual, residual < tol)
}

/// Stationary vector from the linear system `(I - alpha S') p = (1 - alpha)/N`,
/// where `S'` includes the uniform dangling columns. Gaussian elimination
/// with partial pivoting; used as an oracle for [`pagerank_power`].
pub fn pagerank_dense_solve(g: &GoogleMatrix) -> Result<RankVector> {
    let n = g.dim();
    if n > DENSE_SOLVE_LIMIT {
        return Err(Error::SizeLimit {
            n,
            limit: DENSE_SOLVE_LIMIT,
        });
    }
    let alpha = g.alpha();
    if alpha >= 1.0 {
        return Err(Error::Singular { pivot: n });
    }
    let s = g.stochastic();
    // row-major copy of I - alpha * S'
    let mut a = vec![0.0; n * n];
    for j in 0..n {
        if s.is_dangling(j) {
            for i in 0..n {
                a[i * n + j] -= alpha / n as f64;
            }
        } else {
            for (i, v) in s.column(j) {
                a[i * n + j] -= alpha * v;
            }
        }
        a[j * n + j] += 1.0;
    }
    let mut b = vec![(1.0 - alpha) / n as f64; n];
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&x, &y| a[x * n + k].abs().total_cmp(&a[y * n + k].abs()))
            .expect("nonempty range");
        if a[pivot * n + k].abs() < 1e-14 {
            return Err(Error::Singular { pivot: k });
        }
        if pivot != k {
            for c in 0..n {
                a.swap(k * n + c, pivot * n + c);
            }
            b.swap(k, pivot);
        }
        let diag = a[k * n + k];
        for r in k + 1..n {
            let factor = a[r * n + k] / diag;
            if factor == 0.0 {
                continue;
            }
            for c in k..n {
                a[r * n + c] -= factor * a[k * n + c];
            }
            b[r] -= factor * b[k];
        }
    }
    let mut p = vec![0.0; n];
    for k in (0..n).rev() {
        let tail: f64 = (k + 1..n).map(|c| a[k * n + c] * p[c]).sum();
        p[k] = (b[k] - tail) / a[k * n + k];
    }
    Ok(RankVector::new(p, alpha, 0, 0.0, true))
}

/// Squared modulus, implemented for real and complex entries.
pub trait SquaredModulus: Copy {
    fn modulus_sq(self) -> f64;
}

impl SquaredModulus for f64 {
    fn modulus_sq(self) -> f64 {
        self * self
    }
}

impl SquaredModulus for Complex64 {
    fn modulus_sq(self) -> f64 {
        self.norm_sqr()
    }
}

/// `(sum |v_j|^2)^2 / sum |v_j|^4`, the effective number of supporting entries.
pub fn participation_ratio<T: SquaredModulus>(v: &[T]) -> Result<f64> {
    let max = v.iter().map(|x| x.modulus_sq()).fold(0.0, f64::max);
    if max == 0.0 || !max.is_finite() {
        return Err(Error::ZeroVector);
    }
    // rescale so the largest |v_j|^2 is 1; avoids under/overflow in the fourth powers
    let (mut s2, mut s4) = (0.0, 0.0);
    for x in v {
        let w = x.modulus_sq() / max;
        s2 += w;
        s4 += w * w;
    }
    Ok(s2 * s2 / s4)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParPoint {
    pub alpha: f64,
    pub xi: f64,
    pub converged: bool,
}

/// Participation ratio of PageRank at each damping value.
pub fn par_vs_alpha(g: &DirectedGraph, alphas: &[f64], tol: f64, max_iter: usize) -> Result<Vec<ParPoint>> {
    let base = GoogleMatrix::from_graph(g, 0.5)?;
    alphas
        .iter()
        .map(|&alpha| {
            check_open_unit(alpha)?;
            let rank = pagerank_power(&base.with_alpha(alpha)?, tol, max_iter);
            Ok(ParPoint {
                alpha,
                xi: participation_ratio(&rank.values)?,
                converged: rank.converged,
            })
        })
        .collect()
}

pub fn write_par_curve<W: Write>(points: &[ParPoint], mut out: W) -> Result<()> {
    writeln!(out, "alpha,xi")?;
    for p in points {
        writeln!(out, "{},{}", g17(p.alpha), g17(p.xi))?;
    }
    Ok(())
}

fn check_open_unit(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::out_of_range("alpha", alpha, "(0, 1)"))
    }
}

/// Exponent `beta` of `p_j ~ j^-beta` from a least-squares fit of
/// `log p` against `log j` over rank positions `j_min..=j_max` (1-based).
pub fn decay_exponent(r: &RankVector, j_min: usize, j_max: usize) -> Result<f64> {
    decay_exponent_of_sorted(&r.sorted(), j_min, j_max)
}

/// [`decay_exponent`] over the default window `[10, N/10]`.
pub fn decay_exponent_default(r: &RankVector) -> Result<f64> {
    decay_exponent(r, 10, r.len() / 10)
}

/// Decay fit on scores already sorted in decreasing order.
pub fn decay_exponent_of_sorted(sorted: &[f64], j_min: usize, j_max: usize) -> Result<f64> {
    let lo = j_min.max(1);
    let hi = j_max.min(sorted.len());
    let points: Vec<(f64, f64)> = (lo..=hi)
        .filter(|&j| sorted[j - 1] > 0.0)
        .map(|j| ((j as f64).ln(), sorted[j - 1].ln()))
        .collect();
    if points.len() < 10 {
        return Err(Error::Fit {
            needed: 10,
            found: points.len(),
        });
    }
    Ok(-least_squares_slope(&points))
}

/// Squared overlap of the two vectors after L2 normalization, clamped to [0, 1].
pub fn fidelity_values(v1: &[f64], v2: &[f64]) -> Result<f64> {
    if v1.len() != v2.len() {
        return Err(Error::DimensionMismatch {
            expected: v1.len(),
            got: v2.len(),
        });
    }
    let n1 = v1.iter().map(|x| x * x).sum::<f64>().sqrt();
    let n2 = v2.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n1 == 0.0 || n2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let dot: f64 = v1.iter().zip(v2).map(|(a, b)| (a / n1) * (b / n2)).sum();
    Ok((dot * dot).clamp(0.0, 1.0))
}

/// PageRank fidelity `f = |<psi1|psi2>|^2` with unit-L2 vectors, entries
/// matched by node id.
pub fn fidelity(v1: &RankVector, v2: &RankVector) -> Result<f64> {
    fidelity_values(&v1.values, &v2.values)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FidelityGrid {
    pub alphas: Vec<f64>,
    /// `f[i][j] = f(alphas[i], alphas[j])`.
    pub f: Vec<Vec<f64>>,
    pub converged: bool,
}

impl FidelityGrid {
    /// Header row and column carry the damping values.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let header: Vec<String> = self.alphas.iter().map(|&a| g17(a)).collect();
        writeln!(out, "alpha,{}", header.join(","))?;
        for (a, row) in self.alphas.iter().zip(&self.f) {
            let cells: Vec<String> = row.iter().map(|&x| g17(x)).collect();
            writeln!(out, "{},{}", g17(*a), cells.join(","))?;
        }
        Ok(())
    }
}

/// Fidelity between every pair of damping values; one PageRank per value.
pub fn fidelity_grid(g: &DirectedGraph, alphas: &[f64], tol: f64, max_iter: usize) -> Result<FidelityGrid> {
    let base = GoogleMatrix::from_graph(g, 0.5)?;
    let mut ranks = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        check_open_unit(alpha)?;
        ranks.push(pagerank_power(&base.with_alpha(alpha)?, tol, max_iter));
    }
    let k = alphas.len();
    let mut f = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let v = fidelity(&ranks[i], &ranks[j])?;
            f[i][j] = v;
            f[j][i] = v;
        }
    }
    Ok(FidelityGrid {
        alphas: alphas.to_vec(),
        f,
        converged: ranks.iter().all(|r| r.converged),
    })
}
