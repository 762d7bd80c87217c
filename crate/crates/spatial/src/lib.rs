//! Integer colorings of spatial Euler-graph diagrams.
//!
//! A diagram is a set of arcs joined at crossings and graph vertices. Its
//! colorings form a free abelian group; the gcd data of the colors around each
//! vertex gives the `d` and `d*` invariants of the underlying spatial graph.

mod error;

pub mod build;
pub mod coloring;
pub mod diagram;
pub mod lattice;
pub mod theta;

pub use coloring::{coloring_basis, is_essential, observed_d_star, vertex_vector, Coloring, ColoringBasis};
pub use diagram::{parse_diagram, Crossing, Diagram, Vertex};
pub use error::{Error, Result};
pub use theta::{d_from_dstar, theta4_build, theta4_coloring, theta4_dstar, DStarSet};
