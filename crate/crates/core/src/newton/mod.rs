//! Newton polyhedra at the origin: parsing, the face lattice and per-face
//! invariants.

pub mod parse;
pub mod polyhedron;
pub mod triangulate;

pub use parse::{parse_json, parse_polynomial, Monomial, MonomialSupport};
pub use polyhedron::{Classification, Face, Facet, NewtonPolyhedron, PolyFace};
pub use triangulate::Triangulator;
