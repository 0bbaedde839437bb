//! Computational finite groupoids and 2-groupoids.
//!
//! The crate builds finite groupoids from explicit tables or standard
//! constructors, computes their bisection groups, assembles canonical
//! 2-groupoids of composition triples, and exhaustively verifies the relevant
//! algebraic laws at desk scale. Every verification entry point returns a
//! [`report::Report`] listing each law with a pass/fail/not-verified outcome
//! and a counterexample when one exists.

// Composition and action tables are parallel arrays addressed by dense ids;
// indexed loops keep the row/column arithmetic visible.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bisections;
pub mod config;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod morphisms;
pub mod report;
pub mod symmetroid;
pub mod symmetry;

pub use config::Limits;
pub use error::{GroupoidError, Result};
pub use report::{CheckOutcome, LawCheck, Report};
