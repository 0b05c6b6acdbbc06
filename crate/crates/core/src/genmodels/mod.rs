//! Seeded random growth models for directed networks.
//!
//! * [`generate_ab`]: Albert-Barabási growth with link addition, rewiring and
//!   node addition;
//! * [`generate_color`]: the same process restricted to links inside color
//!   communities, a restriction broken with a small probability;
//! * [`generate_al`]: Avrachenkov-Lebedev growth with retained link
//!   multiplicities.
//!
//! Preferential targets are drawn with probability proportional to
//! `in_degree + 1`. Every generator is bit-reproducible for a fixed seed.

mod al;
mod growth;
mod params;

pub use al::generate_al;
pub use growth::{generate_ab, generate_color, write_colored_edge_list, ColoredGraph};
pub use params::{AbParams, AlParams, ColorParams, ForbiddenLink};
