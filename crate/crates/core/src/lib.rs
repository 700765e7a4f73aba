//! Exact invariants for the 2-bridge knots `K(m,n)` with continued fraction
//! `[2m+3, 1, 2n+4, 1, 1, 2]`, together with the two searches that certify
//! their slice genera:
//!
//! * a genus-one Alexander-trivial subform of the Seifert form, which bounds
//!   the topological slice genus by one ([`curve_search`]);
//! * an exhaustive search for embeddings of the Goeritz lattice into a cubic
//!   lattice `Z^M`, whose failure at `M = rank - signature` forces the smooth
//!   slice genus up to two ([`lattice`]).
//!
//! Everything is computed with exact integers and rationals.

pub mod arith;
pub mod curve_search;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod naive;
pub mod pipeline;
pub mod seifert;
pub mod two_bridge;

pub use arith::{Fraction, LaurentPolynomial};
pub use curve_search::CurveCertificate;
pub use error::{Error, Result};
pub use lattice::{Embedding, GramLattice};
pub use matrix::IntMatrix;
pub use pipeline::SliceReport;
pub use two_bridge::{ContinuedFraction, KnotParams, SeifertMatrix};
