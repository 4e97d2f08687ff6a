//! Exact computations with nilpotent Lie algebras of small dimension:
//! invariants, degeneration witnesses, obstructions to degeneration, central
//! extensions and degeneration posets.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod bstable;
pub mod catalog;
pub mod degeneration;
pub mod error;
pub mod extensions;
pub mod format;
pub mod ideal;
pub mod invariants;
pub mod linalg;
pub mod obstructions;
pub mod poset;
pub mod ratfunc;
pub mod scalar;
pub mod subspace;

pub use algebra::{BasisChange, LieAlgebra, SparseVector};
pub use catalog::{Catalog, CatalogEntry};
pub use degeneration::DegenerationWitness;
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use num_traits::{One, Zero};
pub use ratfunc::{Poly, RatFunc};
pub use scalar::{Field, Gaussian, Rational};
pub use subspace::Subspace;
