//! Quantum-classical oracle correspondence.
//!
//! Extracts classical counterparts of quantum oracles under different
//! computational-basis choices, classifies two-qubit unitaries by their
//! counterpart classes through Makhlin invariants, and compares exact
//! deterministic classical query complexity with simulated quantum query
//! counts.

pub mod cli;
pub mod correspondence;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod query;

pub use error::{Error, Result};

/// Absolute tolerance used wherever a caller does not supply one.
pub const DEFAULT_TOL: f64 = 1e-9;
