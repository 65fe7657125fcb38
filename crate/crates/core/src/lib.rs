//! Exact classification of prime, primary and absorbing-type submodules over
//! finite commutative rings and free integer lattices, with an executable
//! catalog of the structural laws relating them.

pub mod cli;
pub mod elemset;
pub mod error;
pub mod expr;
pub mod finite_module;
pub mod finite_ring;
pub mod integer_module;
pub mod theorem_suite;

pub use error::{Error, Result};
