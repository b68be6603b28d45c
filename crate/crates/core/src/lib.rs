//! Mixed mimetic spectral elements for 2D Stokes flow in
//! vorticity–velocity–pressure form.
//!
//! Vorticity is a 0-cochain on mesh nodes, velocity a 1-cochain of edge fluxes
//! and pressure a 2-cochain of cell integrals. Mass conservation is the integer
//! incidence matrix `E²¹` applied to the fluxes, so the discrete velocity is
//! divergence free at cochain level and pointwise.

pub mod assembly;
pub mod basis;
pub mod driver;
pub mod error;
pub mod geometry;
pub mod solver;
pub mod sparse;
pub mod topology;

pub use error::{Error, Result};
