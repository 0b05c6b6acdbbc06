//! Full complex spectra of dense Google matrices and the observables derived
//! from them: relaxation rates, eigenvector participation ratios, density of
//! states, degeneracy clusters, and spectra of rank-truncated matrices.

mod dos;
mod eigen;
mod observables;
mod truncation;

pub use dos::{density_of_states, DosHistogram, DosOptions};
pub use eigen::{eigendecompose, eigenvalues_only, sort_eigenvalues, Spectrum, DEFAULT_EIGEN_TOL};
pub use observables::{
    alpha_scaling_check, degeneracy_clusters, eigenvector_pars, hausdorff_distance, multiset_distance, relaxation_rate,
    relaxation_rates, second_modulus, Cluster, DegeneracyReport, RelaxationRates, DEFAULT_DEGENERACY_TOL,
    DEFAULT_ZERO_CUTOFF,
};
pub use truncation::{truncated_spectrum_compare, TruncatedSpectrum, TruncationOptions, TruncationReport};
