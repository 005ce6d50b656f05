//! Quantum-non-demolition readout of a quantum-dot electron spin through
//! cavity exciton-polaritons.
//!
//! The crate covers the chain from the dot/well effective-mass problem to the
//! measurement time: electronic structure and envelope fits, the
//! spin–polariton exchange energy, cavity reflection and detection signals,
//! phonon-assisted spin-flip and radiative error channels, the shot-noise
//! budget, and the mirror relations that set the cavity parameters.

// `!(x > 0.0)` guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod budget;
pub mod cavity;
pub mod cli;
pub mod config;
pub mod design;
pub mod electronic;
pub mod error;
pub mod exchange;
pub mod lanczos;
pub mod numeric;
pub mod phonon;
pub mod radiative;
pub mod units;

pub use error::{Error, Result};
