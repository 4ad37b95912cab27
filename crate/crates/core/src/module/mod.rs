//! Bound quiver algebras, their representations, Hom spaces and radicals.

mod algebra;
mod hom;
mod radical;
mod repr;

pub use algebra::{Algebra, Relation};
pub use hom::{end_radical, find_isomorphism, hom_basis, is_isomorphic, rad_basis, HomSpace};
pub use radical::*;
pub use repr::{cokernel, kernel, Morphism, Representation};
