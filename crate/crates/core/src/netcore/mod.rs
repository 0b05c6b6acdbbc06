//! Directed graphs: ingestion, preprocessing, degree statistics and the
//! degree-preserving rewiring null model.

mod degree;
mod graph;
mod io;
mod randomize;

pub use degree::{
    degree_distribution, fit_loglog_slope, fit_loglog_slope_default, reciprocity, DegreeDistribution, Direction,
};
pub use graph::{filter_min_outdegree, DirectedGraph, Edge, NodeMapping};
pub use io::{load_edge_list, parse_edge_list, write_edge_list, LoadOptions};
pub use randomize::{default_swap_count, maslov_randomize, maslov_randomize_with};
