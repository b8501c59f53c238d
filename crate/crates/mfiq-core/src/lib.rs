//! Numerical kernels connecting Fisher information to wave mechanics on
//! uniform 1D grids.
//!
//! The crate is organised around a small set of field types ([`grid`],
//! [`field`]) and five computational layers:
//!
//! - [`fisher`]: Fisher-information functionals, statistical distance,
//!   the quantum potential, and the momentum / kinetic-energy identities.
//! - [`mfi`]: ground states from minimum-Fisher-information gradient descent,
//!   cross-checked by an independent finite-difference eigensolver.
//! - [`action`]: polar (density, action) decomposition of wavefunctions,
//!   phase unwrapping, and the classical free-particle action.
//! - [`dynamics`]: Crank–Nicolson propagation with continuity and
//!   quantum Hamilton–Jacobi residual checks on the propagated states.
//! - [`kg`]: Klein–Gordon stationary residuals, leapfrog propagation, and
//!   dispersion measurement.
//!
//! All fields are immutable after construction and every operation is a pure
//! function, so values can be shared freely across threads. The crate is
//! `no_std`-compatible (with `alloc`); the `std` feature only adds
//! `std::error::Error` for [`Error`].

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod action;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod fisher;
pub mod grid;
pub mod kg;
pub mod mfi;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use field::{
    ComplexField, DensityField, PhaseField, PotentialField, PotentialKind, RealField, WaveField,
};
pub use grid::{Boundary, Grid};
