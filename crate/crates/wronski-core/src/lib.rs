//! Universal Plücker coordinate operators on Specht modules.
//!
//! The crate builds the operators `β^λ(t)` inside matrix models of Specht
//! modules, checks the identities they satisfy, and uses their joint
//! spectrum to solve the inverse Wronski problem. It needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod bethe;
pub mod combinatorics;
pub mod error;
pub mod grassmann;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod solver;
pub mod specht;
pub mod symfunc;

pub use combinatorics::{Partition, Permutation};
pub use error::Error;
pub use matrix::Matrix;
pub use poly::Poly;
pub use scalar::{int, rational, Rational, Scalar};
