//! Travelling kinks in discrete Klein-Gordon lattices.
//!
//! The crate is organised around the scalar fourth-order normal form
//! `phi'''' + sigma phi'' + F(phi) = 0` that governs travelling kinks near
//! the quadruple-zero point `(c, h) = (1, 0)`:
//!
//! - [`model`]: on-site nonlinearities `F`, their derivatives and potentials.
//! - [`dispersion`]: linear dispersion relation, imaginary roots, the 1:1
//!   resonance curve and the quartic eigenvalue classification.
//! - [`integrator`]: fixed-step RK4 for the normal form, equilibrium rates,
//!   the unstable-manifold initial condition and the first integral.
//! - [`shooting`]: the split function `K(sigma)`, scans, zero bisection and
//!   the `c0` / `dt` sensitivity studies.
//! - [`stokes`]: the inverse-power-series recurrences behind the Stokes
//!   constant.
//! - [`inverse`]: the inverse-method nonlinearity with exact `tanh` kinks.
//! - [`lattice`]: a velocity-Verlet simulator of the full lattice.

pub mod dispersion;
mod error;
pub mod integrator;
pub mod inverse;
pub mod lattice;
pub mod model;
pub mod shooting;
pub mod stokes;

pub use error::{Error, Result};
pub use integrator::{EquilibriumRates, NormalForm, State4};
pub use inverse::{InverseParams, MuSRoots};
pub use lattice::LatticeState;
pub use model::{Nonlinearity, NormalFormParams};
pub use shooting::{ScanRow, ShootingConfig, SplitResult, ZeroRecord};
pub use stokes::StokesSequence;
