//! Smooth manufactured Stokes solution on the unit square.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::Result;
use crate::geometry::MappedMesh;
use crate::solver::{BcKind, BoundaryData, StokesProblem};

/// Analytic fields of a Stokes solution with ν = 1.
pub trait ExactSolution: Send + Sync {
    fn vorticity(&self, x: f64, y: f64) -> f64;
    fn vorticity_gradient(&self, x: f64, y: f64) -> [f64; 2];
    fn velocity(&self, x: f64, y: f64) -> [f64; 2];
    fn pressure(&self, x: f64, y: f64) -> f64;
    /// Body force `(f_x, f_y)`.
    fn forcing(&self, x: f64, y: f64) -> [f64; 2];
}

/// `u = (−sin 2πx cos 2πy, cos 2πx sin 2πy)`, `p = sin πx sin πy`,
/// `ω = −4π sin 2πx sin 2πy`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Manufactured;

impl ExactSolution for Manufactured {
    fn vorticity(&self, x: f64, y: f64) -> f64 {
        -4.0 * PI * (2.0 * PI * x).sin() * (2.0 * PI * y).sin()
    }

    fn vorticity_gradient(&self, x: f64, y: f64) -> [f64; 2] {
        let c = -8.0 * PI * PI;
        [
            c * (2.0 * PI * x).cos() * (2.0 * PI * y).sin(),
            c * (2.0 * PI * x).sin() * (2.0 * PI * y).cos(),
        ]
    }

    fn velocity(&self, x: f64, y: f64) -> [f64; 2] {
        [
            -(2.0 * PI * x).sin() * (2.0 * PI * y).cos(),
            (2.0 * PI * x).cos() * (2.0 * PI * y).sin(),
        ]
    }

    fn pressure(&self, x: f64, y: f64) -> f64 {
        (PI * x).sin() * (PI * y).sin()
    }

    fn forcing(&self, x: f64, y: f64) -> [f64; 2] {
        let k = 8.0 * PI * PI;
        [
            PI * (PI * x).cos() * (PI * y).sin() - k * (2.0 * PI * x).sin() * (2.0 * PI * y).cos(),
            PI * (PI * x).sin() * (PI * y).cos() + k * (2.0 * PI * x).cos() * (2.0 * PI * y).sin(),
        ]
    }
}

/// Stokes problem whose solution is `exact`, with all boundary data taken
/// from it.
pub fn exact_problem<E: ExactSolution + Clone + 'static>(
    exact: E,
    mesh: Arc<MappedMesh>,
    bcs: [BcKind; 4],
) -> Result<StokesProblem> {
    let (a, b, c, d) = (exact.clone(), exact.clone(), exact.clone(), exact);
    let data = BoundaryData {
        velocity: Some(Arc::new(move |x, y| a.velocity(x, y))),
        vorticity: Some(Arc::new(move |x, y| b.vorticity(x, y))),
        pressure: Some(Arc::new(move |x, y| c.pressure(x, y))),
    };
    StokesProblem::new(mesh, bcs, Arc::new(move |x, y| d.forcing(x, y)), data)
}
