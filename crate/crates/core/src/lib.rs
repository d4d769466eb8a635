//! Exact, degree-by-degree verification of the exact sequences attached to
//! presentations of associative algebras and monoids.
//!
//! The crate builds every finite-dimensional piece of the relation bimodule
//! `J/J²`, the homotopy bimodule `π₂(P) = H/D`, the Squier complex of a monoid
//! presentation and its one- and two-sided Cayley complexes, and checks the
//! claimed exactness statements with rational and integral linear algebra.
//! No floating point is used anywhere.

pub mod cayley;
pub mod cli;
pub mod error;
pub mod freealg;
pub mod graded;
pub mod linalg;
pub mod presentation;
pub mod report;
pub mod squier;
mod unionfind;
pub mod words;

pub use error::{Error, Result};
pub use freealg::{HomogeneousDegree, NcPoly};
pub use linalg::{Q, Z};
pub use presentation::{AlgebraPresentation, Homogeneity, MonoidPresentation, Presentation};
pub use words::{Alphabet, Word};
