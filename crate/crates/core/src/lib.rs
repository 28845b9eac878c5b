//! Finite-dimensional frame theory on dense complex matrices.
//!
//! The crate realizes frames for `C^d` as synthesis matrices and provides
//! canonical, approximately dual and generalized (g-) dual frames, their
//! parameterization by right annihilators of the synthesis operator, the
//! transfer of such duals to nearby frames, and Gabor systems on a sampled
//! periodic line.
//!
//! Everything is `no_std` with `alloc`; file formats and the command-line
//! front end live in the companion `framedual` crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod duality;
pub mod error;
pub mod frames;
pub mod gabor;
pub mod oplin;
pub mod perturbation;

pub use error::{Error, Result};

pub use frames::{Annihilator, Frame, FrameBounds};
pub use num_complex::Complex64;
pub use oplin::{LinearMap, Spectrum};

/// Strict `‖·‖ < 1` hypotheses are enforced as `‖·‖ < 1 - STRICT_MARGIN`.
pub const STRICT_MARGIN: f64 = 1e-12;
