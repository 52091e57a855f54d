//! Exact integer linear algebra: matrices, Bézout coefficients, Smith and
//! Hermite normal forms, finite abelian groups.

mod gcd;
mod group;
pub(crate) mod hermite;
mod matrix;
mod smith;

pub use gcd::{ext_gcd, mod_inverse};
pub use group::{
    quotient_group, subgroup_generated, subgroups_equal, FinAbGroup, GroupElement,
    GroupPresentation, Subgroup,
};
pub use hermite::{hermite_normal_form, row_lattice_basis};
pub use matrix::{IntMatrix, UnimodularMatrix};
pub use smith::{smith_normal_form, SmithDecomposition};
