//! Exact computational toolkit for the 3-state Potts model and its
//! order-3 extension.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! computations:
//!
//! - [`scalar`], [`series`], [`linalg`]: exact rationals, cyclotomic
//!   numbers, fractional-exponent truncated series, and exact linear algebra.
//! - [`fusion`]: fusion rings, the built-in tables, the Verlinde builder,
//!   branching upper bounds, the sandwich solver that derives the extension
//!   ring, and grading automorphisms.
//! - [`vertex`]: the lattice Fock-space engine (vertex-operator modes,
//!   conformal vectors, eigenvalue classification, fusion evidence).
//! - [`characters`]: theta series, Heisenberg series, minimal-model
//!   characters and the branching solver.
//! - [`pipeline`]: the end-to-end derivation runs shared by the command
//!   line and the tests.
//!
//! File formats, configuration and the command line live in the companion
//! `triality` crate.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod characters;
pub mod error;
pub mod fusion;
pub mod linalg;
pub mod pipeline;
pub mod scalar;
pub mod series;
pub mod vertex;

pub use error::{Error, Result};
pub use scalar::{CycScalar, Scalar};
pub use series::FracSeries;
