//! Permutation-symmetry structure of N identical n-level particles.
//!
//! The crate splits the `n^N` dimensional product space into sectors of
//! definite exchange symmetry, builds the coupled `|j, m; d>` basis for
//! qubits, combines conjugate states into an orthonormal basis of entangled
//! states, and measures the result (von Neumann entropy, Wootters and
//! spin-flip concurrence, product structure).
//!
//! Levels are written 1-based at every I/O boundary (`|112>`) and stored
//! 0-based internally.

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod partitions;
pub mod schur_weyl;
pub mod statespace;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use statespace::{BasisLabel, DensityMatrix, Permutation, StateVector, SystemShape};
