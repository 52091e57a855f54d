//! Exact computations around cancellation for principal torus bundles:
//! integer normal forms, orbits of bundle classes under `GL_n(ℤ)`,
//! monomial maps, lattice sections, and intersection forms of weighted
//! dual graphs.

pub mod bundles;
pub mod claims;
pub mod cli;
pub mod error;
pub mod intmat;
mod json;
pub mod lattice;
pub mod monomial;
pub mod parse;
pub mod sncgraph;

pub use error::{Error, Result};
