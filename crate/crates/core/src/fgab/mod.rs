//! Exact arithmetic for finitely generated abelian groups and their
//! homomorphisms, built on Smith normal form over arbitrary-precision
//! integers. No floating point enters this module.

mod group;
pub(crate) mod hom;
mod matrix;
mod smith;

pub use group::FgAbGroup;
pub use hom::GroupHom;
pub use matrix::IntMatrix;
pub use smith::{snf, SmithDecomposition};
