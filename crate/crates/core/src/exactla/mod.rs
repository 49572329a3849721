//! Exact integer and rational linear algebra, convex hulls and lattice-point
//! enumeration.

pub mod hull;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod rational;

pub use hull::{double_description, extreme_rays, HRep, Inequality};
pub use lattice::{lattice_points, parallelepiped_constraints, Constraint, Strictness};
pub use matrix::IntMatrix;
pub use normal_form::{face_delta, hermite_normal_form, integer_kernel, smith_decomposition, smith_normal_form};
pub use rational::{format_rational, parse_rational, Int, Rational};
