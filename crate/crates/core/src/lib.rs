//! Computational commutative algebra over prime fields: graded quotient
//! rings, Groebner bases for modules, minimal free resolutions, degreewise
//! homology, and the numerical invariants built on top of them.

pub mod constructions;
pub mod degreewise;
pub mod error;
pub mod field;
pub mod fitter;
pub mod groebner;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
pub use field::FieldSpec;
