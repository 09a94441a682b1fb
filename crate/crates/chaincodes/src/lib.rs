//! Cyclic codes over finite chain rings.
//!
//! The crate builds Galois rings and equal-characteristic chain rings with their
//! Galois extensions ([`ring`]), does linear algebra over them ([`linalg`]),
//! handles cyclotomic cosets and partitions ([`cyclotomic`]) and realises every
//! cyclic code of length coprime to the residue characteristic as a direct sum
//! of scaled trace codes ([`codes`]). [`catalog`] turns codes into reports.

pub mod arith;
pub mod catalog;
pub mod codes;
pub mod cyclotomic;
pub mod error;
pub mod linalg;
pub mod ring;

pub use error::{Error, Result};
