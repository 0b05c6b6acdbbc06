//! Spectral analysis of Google matrices built from directed networks.
//!
//! The crate is organized by stage:
//!
//! * [`netcore`]: directed graphs, edge-list I/O, the out-degree filter,
//!   degree statistics and degree-preserving rewiring;
//! * [`gmatrix`]: the column-stochastic link matrix and the damped Google
//!   matrix, as a sparse operator or a dense matrix;
//! * [`ranking`]: PageRank, participation ratio, decay exponent and fidelity;
//! * [`spectra`]: complex eigendecomposition and spectral observables;
//! * [`genmodels`]: seeded random growth models (AB, color, AL).

pub mod error;
pub mod format;
pub mod genmodels;
pub mod gmatrix;
pub mod netcore;
pub mod ranking;
pub mod spectra;
pub mod stats;

pub use error::{Error, Result};
pub use gmatrix::{build_stochastic, DenseMatrix, GoogleMatrix, StochasticMatrix};
pub use netcore::{DirectedGraph, Edge};
pub use ranking::RankVector;
pub use spectra::Spectrum;
