//! Exact combinatorial mutations of lattice polytopes, tropical cluster
//! mutations, Lie-theoretic polytope generators and marked poset polytopes.
//!
//! All arithmetic is exact. Points are row vectors and linear maps act on the
//! right.

pub mod cluster;
pub mod error;
pub mod exact;
pub mod lie;
pub mod mutation;
pub mod polytope;
pub mod poset;

pub use error::{Error, Result};
pub use exact::{IntMatrix, IntVector, RatVector, Rational};
pub use polytope::{Halfspace, RationalPolytope};
