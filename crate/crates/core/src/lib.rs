//! Frobenius numbers and upper bounds on them.
//!
//! The crate computes exact Frobenius numbers, evaluates eight classical and
//! recent upper bounds, and runs seeded Monte Carlo comparisons of those
//! bounds. It also reproduces the Selmer counterexample search and the
//! `F(p, p+1)` tables showing that no bound of the form
//! `C (a_1 a_n)^{1-ε}` can hold in general.

pub mod bounds;
pub mod cli;
pub mod counterexamples;
pub mod error;
pub mod frobenius;
pub mod montecarlo;
pub mod report;
pub mod sampling;
pub mod subquadratic;
pub mod vectors;

pub use error::{Error, Result};
