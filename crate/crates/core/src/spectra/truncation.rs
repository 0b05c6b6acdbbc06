use num_complex::Complex64;

use super::{eigendecompose, hausdorff_distance, Spectrum, DEFAULT_EIGEN_TOL};
use crate::error::Result;
use crate::gmatrix::{GoogleMatrix, DEFAULT_DENSE_LIMIT};
use crate::netcore::DirectedGraph;
use crate::ranking::{pagerank_power, DEFAULT_MAX_ITER, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationOptions {
    /// Damping used for the PageRank that orders the nodes.
    pub rank_alpha: f64,
    pub eigen_tol: f64,
    pub dense_limit: usize,
}

impl Default for TruncationOptions {
    fn default() -> Self {
        TruncationOptions {
            rank_alpha: 0.85,
            eigen_tol: DEFAULT_EIGEN_TOL,
            dense_limit: DEFAULT_DENSE_LIMIT,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TruncatedSpectrum {
    pub m: usize,
    /// Original ids of the kept nodes, ascending.
    pub kept: Vec<usize>,
    pub spectrum: Spectrum,
    /// Hausdorff distance between this cloud and the full one.
    pub hausdorff: f64,
}

#[derive(Debug, Clone)]
pub struct TruncationReport {
    pub alpha: f64,
    pub full: Spectrum,
    pub truncated: Vec<TruncatedSpectrum>,
}

impl TruncationReport {
    pub fn full_cloud(&self) -> &[Complex64] {
        self.full.eigenvalues()
    }
}

/// Diagonalizes the Google matrix at `alpha` and its restrictions to the
/// top-`m` PageRank nodes for each `m` in `sizes`.
pub fn truncated_spectrum_compare(
    g: &DirectedGraph,
    alpha: f64,
    sizes: &[usize],
    opts: TruncationOptions,
) -> Result<TruncationReport> {
    let google = GoogleMatrix::from_graph(g, alpha)?;
    let rank = pagerank_power(&google.with_alpha(opts.rank_alpha)?, DEFAULT_TOL, DEFAULT_MAX_ITER);
    let full = eigendecompose(&google.materialize_dense(opts.dense_limit)?, opts.eigen_tol)?;
    let truncated = sizes
        .iter()
        .map(|&m| {
            let (sub, kept) = google.truncate_by_rank(&rank, m)?;
            let spectrum = eigendecompose(&sub.materialize_dense(opts.dense_limit)?, opts.eigen_tol)?;
            let hausdorff = hausdorff_distance(full.eigenvalues(), spectrum.eigenvalues());
            Ok(TruncatedSpectrum {
                m,
                kept,
                spectrum,
                hausdorff,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncationReport { alpha, full, truncated })
}
