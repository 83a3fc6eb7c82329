//! Exact Reidemeister torsion of based chain complexes and twisted Alexander
//! polynomials of knot and link groups.

pub mod algebra;
pub mod error;
pub mod fox;
pub mod invariants;
pub mod report;
pub mod reps;
pub mod selftest;
pub mod torsion;

pub use error::{Error, Result};
