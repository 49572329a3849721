//! Singularity invariants of Newton non-degenerate functions computed from
//! the Newton polyhedron in exact arithmetic: Hodge spectrum, spectral pairs,
//! Jordan blocks of the monodromy, the maximal Bernstein-Sato root, normal
//! fans with smooth subdivisions, and formal motivic nearby fibers.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod fan;
pub mod monodromy;
pub mod motivic;
pub mod newton;
pub mod puiseux;
pub mod report;
pub mod spectrum;

pub use error::{Error, Result};
