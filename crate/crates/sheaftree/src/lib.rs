//! Exact-arithmetic cohomology of equivariant cellular sheaves on finite
//! trees.
//!
//! The library computes compactly-supported cohomology of cellular
//! sheaves over ℚ or 𝔽_p, validates group-equivariant structures, and,
//! when H⁰ is irreducible, decomposes it as a representation induced
//! from a vertex or edge stabilizer, emitting a certified intertwiner
//! that is checked exactly.

pub mod field;
pub mod matrix;
pub mod subspace;
pub mod tree;
pub mod sheaf;
pub mod group;
pub mod rep;
pub mod equivariant;
pub mod fixtures;
pub mod decompose;
pub mod instance;
pub mod report;
pub mod generate;
pub mod selftest;

pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use subspace::Subspace;
pub use tree::Tree;
pub use sheaf::Sheaf;
pub use group::GroupTable;
pub use equivariant::EquivariantSheaf;
pub use rep::Representation;
