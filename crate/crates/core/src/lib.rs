//! Exact computations on Auslander-Reiten components of bound quiver
//! algebras: mesh categories, mesh-comparisons (Riedtmann functors), the
//! radical filtration, radical-graded decompositions of morphisms and the
//! decision procedures built on them.
//!
//! Everything is generic over [`Scalar`]; the aliases below fix the fields
//! the command line dispatches to.

pub mod analysis;
pub mod component;
pub mod decomposition;
pub mod error;
pub mod format;
pub mod linalg;
pub mod mesh;
pub mod module;
pub mod quiver;
pub mod riedtmann;
pub mod scalar;

#[cfg(test)]
mod testing;

pub use component::{load_component, validate_component, ArComponent, ValidationCertificate};
pub use decomposition::{decompose, MorphismParts};
pub use error::{Error, Result};
pub use mesh::{GradedHomTable, MeshClass};
pub use module::{Depth, Morphism, Representation};
pub use quiver::{QPath, Quiver, TranslationQuiver};
pub use riedtmann::{find_mesh_comparison, verify_mesh_comparison, RiedtmannFunctor, SearchConfig, SearchOutcome};
pub use scalar::{FieldSpec, Fp, Rational, Scalar};

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
pub type Gf5 = Fp<5>;
pub type Gf7 = Fp<7>;
pub type Gf11 = Fp<11>;
pub type Gf13 = Fp<13>;
pub type Gf101 = Fp<101>;
pub type Gf32003 = Fp<32003>;
