//! Simulator and diagnostics harness for the viscous liquid-gas two-phase
//! flow model
//!
//! ```text
//! m_t + div(m u) = 0
//! n_t + div(n u) = 0
//! (m u)_t + div(m u ⊗ u) + grad P(m, n) = mu Lap u + (mu + lambda) grad div u
//! ```
//!
//! on periodic boxes in one or three dimensions.

pub mod cli;
pub mod diagnostics;
pub mod dynamics;
pub mod eos;
pub mod error;
pub mod field;
pub mod io;
pub mod quadrature;
pub mod verification;

pub use error::{Error, Result};
