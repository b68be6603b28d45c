//! Lid-driven cavity: unit square, lid at y = 1 moving with unit speed to the
//! right, no-slip elsewhere.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use crate::assembly::{element_reference_value, physical_value, reconstruct, FieldValue};
use crate::error::{Error, Result};
use crate::geometry::{Grading, MapKind, MappedMesh};
use crate::solver::{solve_problem, BcKind, BoundaryData, SolutionFields, StokesProblem};
use crate::topology::Cochain;

use super::norms::{divergence_report, DivergenceReport};

/// Stream function `ψ` with `E¹⁰ψ = u`, anchored at the bottom-left node.
#[derive(Clone, Debug, PartialEq)]
pub struct StreamFunction {
    pub psi: Cochain,
}

impl StreamFunction {
    /// Accumulate fluxes along the bottom row, then up every column.
    pub fn from_fluxes(mesh: &MappedMesh, u: &Cochain) -> Self {
        Self {
            psi: accumulate(mesh, u, false),
        }
    }

    /// Largest difference to the potential obtained by accumulating along the
    /// left column first and then along every row.
    pub fn path_discrepancy(&self, mesh: &MappedMesh, u: &Cochain) -> f64 {
        let other = accumulate(mesh, u, true);
        self.psi
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// `max |E¹⁰ψ − u|`.
    pub fn flux_mismatch(&self, mesh: &MappedMesh, u: &Cochain) -> f64 {
        let d = mesh
            .complex
            .incidence(1)
            .expect("dim 2")
            .apply(&self.psi.values)
            .expect("sizes match");
        d.iter().zip(&u.values).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

fn accumulate(mesh: &MappedMesh, u: &Cochain, rows_last: bool) -> Cochain {
    let c = &mesh.complex;
    let kk = mesh.m * mesh.order;
    let node = |i, j| c.cell_id(0, [i, j, 0]).expect("node");
    let h = |i, j| u.values[c.cell_id(0b01, [i, j, 0]).expect("edge")];
    let v = |i, j| u.values[c.cell_id(0b10, [i, j, 0]).expect("edge")];
    let mut psi = vec![0.0; c.count(0)];
    // E¹⁰ on a horizontal edge is ψ_left − ψ_right, on a vertical edge ψ_top − ψ_bottom
    if rows_last {
        for j in 0..kk {
            psi[node(0, j + 1)] = psi[node(0, j)] + v(0, j);
        }
        for j in 0..=kk {
            for i in 0..kk {
                psi[node(i + 1, j)] = psi[node(i, j)] - h(i, j);
            }
        }
    } else {
        for i in 0..kk {
            psi[node(i + 1, 0)] = psi[node(i, 0)] - h(i, 0);
        }
        for i in 0..=kk {
            for j in 0..kk {
                psi[node(i, j + 1)] = psi[node(i, j)] + v(i, j);
            }
        }
    }
    Cochain::new(0, psi)
}

/// Cavity solve with extracted diagnostics.
#[derive(Clone, Debug)]
pub struct CavityResult {
    pub fields: SolutionFields,
    /// `(y, u)` along x = 1/2.
    pub u_centerline: Vec<(f64, f64)>,
    /// `(x, v)` along y = 1/2.
    pub v_centerline: Vec<(f64, f64)>,
    pub stream: StreamFunction,
    pub divergence: DivergenceReport,
}

/// Cavity problem definition.
pub fn cavity_problem(m: usize, n: usize, grading: Grading) -> Result<StokesProblem> {
    let mesh = Arc::new(MappedMesh::build(m, n, MapKind::Cartesian, grading)?);
    let data = BoundaryData {
        velocity: Some(Arc::new(|_, y| if y >= 1.0 { [1.0, 0.0] } else { [0.0, 0.0] })),
        ..Default::default()
    };
    StokesProblem::new(mesh, [BcKind::Velocity; 4], Arc::new(|_, _| [0.0, 0.0]), data)
}

/// Evaluate a cochain at a physical point.
pub fn evaluate_at(sol: &SolutionFields, c: &Cochain, x: f64, y: f64) -> Result<FieldValue> {
    let (e, xi, eta) = sol
        .mesh
        .locate(x, y)
        .ok_or(Error::Config(format!("point ({x}, {y}) outside the mesh")))?;
    let r = element_reference_value(&sol.mesh, &sol.dofs, c, e, xi, eta);
    Ok(physical_value(c.degree, r, &sol.mesh.elements[e].jacobian(xi, eta)))
}

/// Velocity proxy at a physical point.
pub fn velocity_at(sol: &SolutionFields, x: f64, y: f64) -> Result<[f64; 2]> {
    match evaluate_at(sol, &sol.velocity, x, y)? {
        FieldValue::Vector(v) => Ok(v),
        FieldValue::Scalar(_) => unreachable!("1-forms reconstruct to vectors"),
    }
}

pub fn run_cavity(m: usize, n: usize, grading: Grading, samples: usize) -> Result<CavityResult> {
    let problem = cavity_problem(m, n, grading)?;
    let fields = solve_problem(&problem)?;
    let k = samples.max(2);
    let ts: Vec<f64> = (0..k).map(|i| i as f64 / (k - 1) as f64).collect();
    let u_centerline = ts
        .iter()
        .map(|&y| velocity_at(&fields, 0.5, y).map(|v| (y, v[0])))
        .collect::<Result<_>>()?;
    let v_centerline = ts
        .iter()
        .map(|&x| velocity_at(&fields, x, 0.5).map(|v| (x, v[1])))
        .collect::<Result<_>>()?;
    let stream = StreamFunction::from_fluxes(&fields.mesh, &fields.velocity);
    let divergence = divergence_report(&fields, k);
    Ok(CavityResult {
        fields,
        u_centerline,
        v_centerline,
        stream,
        divergence,
    })
}

/// Gnuplot-style dump `x y value…` of a cochain on a uniform
/// `samples × samples` reference grid per element, blank line between
/// elements.
pub fn write_field<W: Write>(sol: &SolutionFields, c: &Cochain, samples: usize, mut w: W) -> Result<()> {
    let k = samples.max(2);
    let pts: Vec<f64> = (0..k).map(|i| -1.0 + 2.0 * i as f64 / (k - 1) as f64).collect();
    let grid: Vec<(f64, f64)> = pts.iter().flat_map(|&b| pts.iter().map(move |&a| (a, b))).collect();
    let vals = reconstruct(&sol.mesh, &sol.dofs, c, &grid)?;
    for (i, s) in vals.iter().enumerate() {
        if i > 0 && i % grid.len() == 0 {
            writeln!(w)?;
        }
        match s.value {
            FieldValue::Scalar(v) => writeln!(w, "{:.10e} {:.10e} {:.10e}", s.x, s.y, v)?,
            FieldValue::Vector([u, v]) => writeln!(w, "{:.10e} {:.10e} {:.10e} {:.10e}", s.x, s.y, u, v)?,
        }
    }
    Ok(())
}

/// Write field dumps and centerline CSVs into `dir`.
pub fn write_cavity_outputs(res: &CavityResult, dir: &Path, samples: usize) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let f = &res.fields;
    let open = |name: &str| std::fs::File::create(dir.join(name)).map(std::io::BufWriter::new);
    write_field(f, &f.vorticity, samples, open("vorticity.dat")?)?;
    write_field(f, &f.velocity, samples, open("velocity.dat")?)?;
    write_field(f, &f.pressure, samples, open("pressure.dat")?)?;
    write_field(f, &res.stream.psi, samples, open("stream.dat")?)?;
    let mut u = open("u_centerline.csv")?;
    writeln!(u, "y,u")?;
    for (y, v) in &res.u_centerline {
        writeln!(u, "{y:.5e},{v:.5e}")?;
    }
    let mut v = open("v_centerline.csv")?;
    writeln!(v, "x,v")?;
    for (x, val) in &res.v_centerline {
        writeln!(v, "{x:.5e},{val:.5e}")?;
    }
    Ok(())
}
