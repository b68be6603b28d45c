//! Saddle-point assembly, boundary conditions, pressure gauge and direct solve.
//!
//! Unknowns are ordered `[ω (0-cochain), u (1-cochain), p (2-cochain)]`. With
//! ν the viscosity the assembled system reads
//!
//! ```text
//! [ νM⁰        −ν(E¹⁰)ᵀM¹   0         ] [ω]   [ ν B₁     ]
//! [ −νM¹E¹⁰    0            (E²¹)ᵀM²  ] [u] = [ −F + B₂  ]
//! [ 0          M²E²¹        0         ] [p]   [ 0        ]
//! ```
//!
//! which is symmetric and follows from the weak form with outer-oriented
//! fluxes: B₁ carries tangential velocity against 0-form traces, B₂ carries
//! pressure against normal-flux traces.

use std::collections::BTreeMap;
use std::sync::Arc;

use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};

use crate::assembly::{
    assemble_b1, assemble_b2, assemble_mass, consistent_load, reduce_0form, reduce_1form, DofMap,
    Segment,
};
use crate::error::{Error, Result};
use crate::geometry::{MappedMesh, QuadRule};
use crate::sparse::SparseMatrix;
use crate::topology::Cochain;

/// Relative residual every solve must reach.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Solution growth on a random probe beyond which a matrix counts as singular.
const SINGULAR_GROWTH: f64 = 1e10;

/// Boundary condition type of one segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BcKind {
    /// Normal velocity essential, tangential velocity natural.
    Velocity,
    /// Tangential velocity and pressure, both natural.
    TangentialVelocityPressure,
    /// Vorticity and normal velocity, both essential.
    VorticityNormalVelocity,
    /// Vorticity essential, pressure natural.
    VorticityPressure,
}

impl BcKind {
    pub const ALL: [BcKind; 4] = [
        BcKind::Velocity,
        BcKind::TangentialVelocityPressure,
        BcKind::VorticityNormalVelocity,
        BcKind::VorticityPressure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BcKind::Velocity => "vel",
            BcKind::TangentialVelocityPressure => "tanvel-pres",
            BcKind::VorticityNormalVelocity => "vort-normvel",
            BcKind::VorticityPressure => "vort-pres",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.name() == s)
    }

    pub fn vorticity_essential(self) -> bool {
        matches!(self, BcKind::VorticityNormalVelocity | BcKind::VorticityPressure)
    }

    pub fn normal_velocity_essential(self) -> bool {
        matches!(self, BcKind::Velocity | BcKind::VorticityNormalVelocity)
    }

    pub fn tangential_natural(self) -> bool {
        matches!(self, BcKind::Velocity | BcKind::TangentialVelocityPressure)
    }

    pub fn pressure_natural(self) -> bool {
        matches!(self, BcKind::TangentialVelocityPressure | BcKind::VorticityPressure)
    }
}

pub type ScalarFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type VectorFn = Arc<dyn Fn(f64, f64) -> [f64; 2] + Send + Sync>;

/// Boundary data sources; only the ones required by the BC types are used.
#[derive(Clone, Default)]
pub struct BoundaryData {
    pub velocity: Option<VectorFn>,
    pub vorticity: Option<ScalarFn>,
    pub pressure: Option<ScalarFn>,
}

/// How the body force enters the momentum equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ForcingMode {
    /// `F = M¹ ℛ(f)`: mass matrix applied to the reduced force cochain.
    #[default]
    Cochain,
    /// `F_i = (φ_i, f)_Ω` by quadrature.
    Consistent,
}

/// A Stokes problem on a mapped mesh.
#[derive(Clone)]
pub struct StokesProblem {
    pub mesh: Arc<MappedMesh>,
    pub dofs: Arc<DofMap>,
    pub nu: f64,
    /// Body force as a proxy `(f_x, f_y)` of `−f_y dx + f_x dy`.
    pub forcing: VectorFn,
    pub bcs: [BcKind; 4],
    pub data: BoundaryData,
    pub forcing_mode: ForcingMode,
    pub quad: QuadRule,
}

impl StokesProblem {
    pub fn new(mesh: Arc<MappedMesh>, bcs: [BcKind; 4], forcing: VectorFn, data: BoundaryData) -> Result<Self> {
        let dofs = Arc::new(DofMap::new(&mesh)?);
        Ok(Self {
            mesh,
            dofs,
            nu: 1.0,
            forcing,
            bcs,
            data,
            forcing_mode: ForcingMode::default(),
            quad: QuadRule::default(),
        })
    }

    pub fn bc(&self, s: Segment) -> BcKind {
        self.bcs[s.index()]
    }

    fn segments(&self, pred: impl Fn(BcKind) -> bool) -> Vec<Segment> {
        Segment::ALL.into_iter().filter(|&s| pred(self.bc(s))).collect()
    }

    /// True when no segment carries pressure data.
    pub fn needs_gauge(&self) -> bool {
        !self.bcs.iter().any(|b| b.pressure_natural())
    }

    /// Whether the velocity block can have a potential-flow nullspace. This
    /// needs at least one segment with essential vorticity; whether the space
    /// is actually nontrivial is decided numerically by the solver.
    pub fn may_have_velocity_nullspace(&self) -> bool {
        self.bcs.iter().any(|b| b.vorticity_essential())
    }

    fn n(&self) -> [usize; 3] {
        [self.dofs.count(0), self.dofs.count(1), self.dofs.count(2)]
    }
}

/// Essential vorticity values on a segment's nodes.
pub fn essential_vorticity(problem: &StokesProblem, s: Segment) -> Result<Vec<(usize, f64)>> {
    if !problem.bc(s).vorticity_essential() {
        return Err(Error::NaturalSegment {
            segment: s.name(),
            field: "vorticity",
        });
    }
    let f = problem
        .data
        .vorticity
        .as_ref()
        .ok_or(Error::MissingData(s.name(), "vorticity"))?;
    let w = reduce_0form(&problem.mesh, &|x, y| f(x, y));
    Ok(problem.dofs.boundary_nodes[s.index()]
        .iter()
        .map(|&i| (i, w.values[i]))
        .collect())
}

/// Essential normal fluxes on a segment's edges.
pub fn essential_flux(problem: &StokesProblem, s: Segment) -> Result<Vec<(usize, f64)>> {
    if !problem.bc(s).normal_velocity_essential() {
        return Err(Error::NaturalSegment {
            segment: s.name(),
            field: "normal velocity",
        });
    }
    let f = problem
        .data
        .velocity
        .as_ref()
        .ok_or(Error::MissingData(s.name(), "velocity"))?;
    let u = reduce_1form(&problem.mesh, &problem.dofs, &|x, y| f(x, y))?;
    Ok(problem.dofs.boundary_edges[s.index()]
        .iter()
        .map(|&i| (i, u.values[i]))
        .collect())
}

/// Assembled saddle-point system with BC bookkeeping.
#[derive(Clone, Debug)]
pub struct SaddleSystem {
    /// Full symmetric matrix over all DOFs.
    pub matrix: SparseMatrix,
    /// The congruent matrix `S·matrix·S` with `S = diag(I, I, (M²)⁻¹)`: the
    /// pressure couplings become the integer `E²¹` and the pressure unknown
    /// becomes `M²p`. This is what gets factored, so the continuity rows are
    /// satisfied as plain flux sums.
    pub scaled: SparseMatrix,
    pub rhs: Vec<f64>,
    /// Sizes of the ω, u and p blocks.
    pub sizes: [usize; 3],
    /// Eliminated DOFs (global system index) and their values.
    pub fixed: BTreeMap<usize, f64>,
    /// Pinned pressure DOF (global system index), if gauged. The pin acts on
    /// the scaled unknown `M²p`.
    pub gauge: Option<usize>,
    pub mass2: SparseMatrix,
    pub mass1: SparseMatrix,
    pub e10: SparseMatrix,
    nullspace: bool,
}

impl SaddleSystem {
    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }

    /// Indices of the DOFs left after elimination and gauge pinning.
    pub fn free_dofs(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|i| !self.fixed.contains_key(i) && self.gauge != Some(*i))
            .collect()
    }
}

/// Assemble the full symmetric system with natural boundary data folded in.
pub fn assemble_system(problem: &StokesProblem) -> Result<SaddleSystem> {
    if !(problem.nu > 0.0) {
        return Err(Error::Config(format!("viscosity must be positive, got {}", problem.nu)));
    }
    let mesh = &problem.mesh;
    let dofs = &problem.dofs;
    let q = problem.quad;
    let nu = problem.nu;
    let [n0, n1, n2] = problem.n();
    let m0 = assemble_mass(mesh, dofs, 0, q)?.matrix;
    let m1 = assemble_mass(mesh, dofs, 1, q)?.matrix;
    let m2 = assemble_mass(mesh, dofs, 2, q)?.matrix;
    let e10 = SparseMatrix::from_incidence(&mesh.complex.incidence(1)?);
    let e21 = SparseMatrix::from_incidence(&mesh.complex.incidence(2)?);
    let b = m1.matmul(&e10)?; // n1 × n0
    let c = m2.matmul(&e21)?; // n2 × n1
    let mut trips = Vec::with_capacity(m0.nnz() + 2 * b.nnz() + 2 * c.nnz());
    trips.extend(m0.triplets().map(|(i, j, v)| (i, j, nu * v)));
    for (i, j, v) in b.triplets() {
        trips.push((n0 + i, j, -nu * v));
        trips.push((j, n0 + i, -nu * v));
    }
    for (i, j, v) in c.triplets() {
        trips.push((n0 + n1 + i, n0 + j, v));
        trips.push((n0 + j, n0 + n1 + i, v));
    }
    let n = n0 + n1 + n2;
    let mut scaled: Vec<_> = trips
        .iter()
        .copied()
        .filter(|&(i, j, _)| i < n0 + n1 && j < n0 + n1)
        .collect();
    for (i, j, v) in e21.triplets() {
        scaled.push((n0 + n1 + i, n0 + j, v));
        scaled.push((n0 + j, n0 + n1 + i, v));
    }
    let matrix = SparseMatrix::from_triplets(n, n, trips);
    let scaled = SparseMatrix::from_triplets(n, n, scaled);

    let mut rhs = vec![0.0; n];
    let f = problem.forcing.clone();
    let load = match problem.forcing_mode {
        ForcingMode::Cochain => {
            let fc = reduce_1form(mesh, dofs, &|x, y| f(x, y))?;
            m1.mul_vec(&fc.values)?
        }
        ForcingMode::Consistent => consistent_load(mesh, dofs, &|x, y| f(x, y), q),
    };
    for (r, l) in rhs[n0..n0 + n1].iter_mut().zip(&load) {
        *r = -l;
    }
    let tangential = problem.segments(BcKind::tangential_natural);
    if !tangential.is_empty() {
        let vel = problem
            .data
            .velocity
            .as_ref()
            .ok_or(Error::MissingData(tangential[0].name(), "velocity"))?;
        let b1 = assemble_b1(mesh, dofs, &|x, y| vel(x, y), &tangential, q)?;
        for (r, v) in rhs[..n0].iter_mut().zip(&b1.values) {
            *r += nu * v;
        }
    }
    let pressure = problem.segments(BcKind::pressure_natural);
    if !pressure.is_empty() {
        let p = problem
            .data
            .pressure
            .as_ref()
            .ok_or(Error::MissingData(pressure[0].name(), "pressure"))?;
        let b2 = assemble_b2(mesh, dofs, &|x, y| p(x, y), &pressure, q)?;
        for (r, v) in rhs[n0..n0 + n1].iter_mut().zip(&b2.values) {
            *r += v;
        }
    }
    Ok(SaddleSystem {
        matrix,
        scaled,
        rhs,
        sizes: [n0, n1, n2],
        fixed: BTreeMap::new(),
        gauge: None,
        mass2: m2,
        mass1: m1,
        e10,
        nullspace: false,
    })
}

/// Record essential vorticity and normal-flux values for elimination.
pub fn apply_bcs(mut system: SaddleSystem, problem: &StokesProblem) -> Result<SaddleSystem> {
    let n0 = system.sizes[0];
    for s in Segment::ALL {
        let bc = problem.bc(s);
        if bc.vorticity_essential() {
            for (i, v) in essential_vorticity(problem, s)? {
                system.fixed.insert(i, v);
            }
        }
        if bc.normal_velocity_essential() {
            for (i, v) in essential_flux(problem, s)? {
                system.fixed.insert(n0 + i, v);
            }
        }
    }
    system.nullspace = problem.may_have_velocity_nullspace();
    Ok(system)
}

/// Pin the last pressure DOF when no pressure data is present.
pub fn fix_pressure_gauge(mut system: SaddleSystem, problem: &StokesProblem) -> SaddleSystem {
    system.gauge = problem.needs_gauge().then(|| system.len() - 1);
    system
}

/// Diagnostics from a solve.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SolveStats {
    pub free_dofs: usize,
    /// Relative residual of the (consistent part of the) reduced system.
    pub residual: f64,
    /// Relative size of the right-hand-side component removed as
    /// incompatible with the velocity nullspace; zero when there is none.
    pub inconsistency: f64,
    /// Whether a nontrivial velocity nullspace was found and projected out.
    /// The velocity is then only determined up to that space.
    pub projected: bool,
}

/// Discrete solution cochains.
#[derive(Clone, Debug)]
pub struct SolutionFields {
    pub mesh: Arc<MappedMesh>,
    pub dofs: Arc<DofMap>,
    pub vorticity: Cochain,
    pub velocity: Cochain,
    pub pressure: Cochain,
    /// Whether the pressure was gauged to zero mean.
    pub gauge_fixed: bool,
    pub bcs: [BcKind; 4],
    pub stats: SolveStats,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn to_faer(a: &SparseMatrix) -> Result<SparseColMat<usize, f64>> {
    let trips: Vec<_> = a.triplets().map(|(i, j, v)| Triplet::new(i, j, v)).collect();
    SparseColMat::try_new_from_triplets(a.nrows(), a.ncols(), &trips)
        .map_err(|e| Error::Singular(format!("matrix construction failed: {e:?}")))
}

/// Sparse LU factorization with a solve method for single vectors.
struct Factor {
    lu: faer::sparse::linalg::solvers::Lu<usize, f64>,
    n: usize,
}

impl Factor {
    fn new(a: &SparseMatrix) -> Result<Self> {
        let lu = to_faer(a)?
            .sp_lu()
            .map_err(|e| Error::Singular(format!("LU factorization failed: {e:?}")))?;
        Ok(Self { lu, n: a.nrows() })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let rhs = Mat::<f64>::from_fn(self.n, 1, |i, _| b[i]);
        let x = self.lu.solve(&rhs);
        (0..self.n).map(|i| x[(i, 0)]).collect()
    }
}

/// Euclidean projector onto the potential-flow nullspace of the reduced
/// velocity block: `{E¹⁰ψ on free edges}` subject to the kernel constraints.
struct NullspaceProjector {
    kkt: Factor,
    /// E¹⁰ restricted to free edges, rows indexed by free-edge position.
    e10f: SparseMatrix,
    n0: usize,
}

impl NullspaceProjector {
    fn new(system: &SaddleSystem, free_edges: &[usize], free_nodes: &[usize]) -> Result<Self> {
        let [n0, n1, _] = system.sizes;
        let e10 = &system.e10;
        let e10f = SparseMatrix::from_triplets(
            free_edges.len(),
            n0,
            free_edges
                .iter()
                .enumerate()
                .flat_map(|(r, &e)| e10.row(e).map(move |(c, v)| (r, c, v)))
                .collect(),
        );
        let h = e10f.transpose().matmul(&e10f)?;
        let lap = e10.transpose().matmul(&system.mass1.matmul(e10)?)?;
        let mut rows: Vec<Vec<(usize, f64)>> = free_nodes.iter().map(|&i| lap.row(i).collect()).collect();
        let is_free_edge = {
            let mut v = vec![false; n1];
            free_edges.iter().for_each(|&e| v[e] = true);
            v
        };
        rows.extend((0..n1).filter(|&e| !is_free_edge[e]).map(|e| e10.row(e).collect()));
        let mut is_free_node = vec![false; n0];
        free_nodes.iter().for_each(|&i| is_free_node[i] = true);
        let pin = (0..n0)
            .find(|&i| !is_free_node[i])
            .ok_or(Error::Config("nullspace projection needs an essential vorticity node".into()))?;
        rows.push(vec![(pin, 1.0)]);
        let nc = rows.len();
        let mut trips: Vec<_> = h.triplets().collect();
        for (r, row) in rows.iter().enumerate() {
            for &(c, v) in row {
                trips.push((n0 + r, c, v));
                trips.push((c, n0 + r, v));
            }
        }
        let kkt = SparseMatrix::from_triplets(n0 + nc, n0 + nc, trips);
        Ok(Self {
            kkt: Factor::new(&kkt)?,
            e10f,
            n0,
        })
    }

    /// Nullspace component of a free-edge vector.
    fn component(&self, r: &[f64]) -> Result<Vec<f64>> {
        let g = self.e10f.transpose().mul_vec(r)?;
        let mut b = vec![0.0; self.kkt.n];
        b[..self.n0].copy_from_slice(&g);
        let psi = self.kkt.solve(&b);
        self.e10f.mul_vec(&psi[..self.n0])
    }
}

/// Fixed pseudo-random vector in [-1/2, 1/2) for singularity probes.
fn probe_vector(n: usize) -> Vec<f64> {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    (0..n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect()
}

/// Factor `a` unless it is numerically singular.
fn nonsingular_factor(a: &SparseMatrix) -> Option<Factor> {
    let f = Factor::new(a).ok()?;
    let r = probe_vector(a.nrows());
    let z = f.solve(&r);
    let zn = norm(&z);
    (zn.is_finite() && zn <= SINGULAR_GROWTH * norm(&r)).then_some(f)
}

/// Element-blockwise solve of `M² x = b` (2-cells are never shared, so M² is
/// block diagonal by element).
fn mass2_solve(system: &SaddleSystem, dofs: &DofMap, b: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; system.sizes[2]];
    for faces in &dofs.local[2] {
        let n = faces.len();
        let a = Mat::<f64>::from_fn(n, n, |i, j| system.mass2.get(faces[i], faces[j]));
        let rhs = Mat::<f64>::from_fn(n, 1, |i, _| b[faces[i]]);
        let sol = a.partial_piv_lu().solve(&rhs);
        for (i, &f) in faces.iter().enumerate() {
            x[f] = sol[(i, 0)];
        }
    }
    x
}

/// Direct solve of the reduced system with iterative refinement.
pub fn solve(system: &SaddleSystem, problem: &StokesProblem) -> Result<SolutionFields> {
    let n = system.len();
    let [n0, n1, _] = system.sizes;
    let free = system.free_dofs();
    let mut pos = vec![usize::MAX; n];
    for (r, &g) in free.iter().enumerate() {
        pos[g] = r;
    }
    let mut x_full = vec![0.0; n];
    for (&i, &v) in &system.fixed {
        x_full[i] = v;
    }
    let ax_fixed = system.scaled.mul_vec(&x_full)?;
    let mut b: Vec<f64> = free.iter().map(|&g| system.rhs[g] - ax_fixed[g]).collect();
    let a = SparseMatrix::from_triplets(
        free.len(),
        free.len(),
        system
            .scaled
            .triplets()
            .filter(|&(i, j, _)| pos[i] != usize::MAX && pos[j] != usize::MAX)
            .map(|(i, j, v)| (pos[i], pos[j], v))
            .collect(),
    );

    let u_range = free.partition_point(|&g| g < n0)..free.partition_point(|&g| g < n0 + n1);
    // A potential-flow nullspace exists exactly when the reduced matrix is
    // singular, so only then is the projector built.
    let mut plain = None;
    let projector = if system.nullspace && !u_range.is_empty() {
        plain = nonsingular_factor(&a);
        if plain.is_none() {
            let free_edges: Vec<usize> = free[u_range.clone()].iter().map(|g| g - n0).collect();
            let free_nodes: Vec<usize> = free.iter().copied().take_while(|&g| g < n0).collect();
            Some(NullspaceProjector::new(system, &free_edges, &free_nodes)?)
        } else {
            None
        }
    } else {
        None
    };

    let bnorm = norm(&b);
    let mut inconsistency = 0.0;
    if let Some(p) = &projector {
        let k = p.component(&b[u_range.clone()])?;
        for (bi, ki) in b[u_range.clone()].iter_mut().zip(&k) {
            *bi -= ki;
        }
        if bnorm > 0.0 {
            inconsistency = norm(&k) / bnorm;
        }
    }

    let mut x = vec![0.0; free.len()];
    let mut residual = 0.0;
    if !free.is_empty() && norm(&b) > 0.0 {
        // A regularized copy is factored when the velocity block is singular;
        // refinement against the true matrix removes the regularization bias.
        let factor = match &projector {
            None => match plain.take() {
                Some(f) => f,
                None => Factor::new(&a)?,
            },
            Some(_) => {
                let eps = 1e-8;
                let mut trips: Vec<_> = a.triplets().collect();
                for (i, j, v) in system.mass1.triplets() {
                    let (gi, gj) = (n0 + i, n0 + j);
                    if pos[gi] != usize::MAX && pos[gj] != usize::MAX {
                        trips.push((pos[gi], pos[gj], -eps * v));
                    }
                }
                Factor::new(&SparseMatrix::from_triplets(a.nrows(), a.ncols(), trips))?
            }
        };
        let bn = norm(&b);
        x = factor.solve(&b);
        let mut best = (f64::INFINITY, x.clone());
        let mut prev = f64::INFINITY;
        for _ in 0..40 {
            if let Some(p) = &projector {
                let k = p.component(&x[u_range.clone()])?;
                for (xi, ki) in x[u_range.clone()].iter_mut().zip(&k) {
                    *xi -= ki;
                }
            }
            let ax = a.mul_vec(&x)?;
            let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
            let rel = norm(&r) / bn;
            if !rel.is_finite() {
                return Err(Error::Singular("non-finite residual".into()));
            }
            if rel < best.0 {
                best = (rel, x.clone());
            }
            if rel < 1e-15 || rel > 0.5 * prev {
                break;
            }
            prev = rel;
            for (xi, di) in x.iter_mut().zip(factor.solve(&r)) {
                *xi += di;
            }
        }
        residual = best.0;
        x = best.1;
        if !(residual <= RESIDUAL_TOL) {
            return Err(Error::Singular(format!(
                "relative residual {residual:.3e} exceeds {RESIDUAL_TOL:.0e}"
            )));
        }
    }
    for (r, &g) in free.iter().enumerate() {
        x_full[g] = x[r];
    }
    let mut pressure = mass2_solve(system, &problem.dofs, &x_full[n0 + n1..]);
    if system.gauge.is_some() {
        // discrete constant-pressure mode
        let z = mass2_solve(system, &problem.dofs, &vec![1.0; pressure.len()]);
        let shift = pressure.iter().sum::<f64>() / z.iter().sum::<f64>();
        for (p, zi) in pressure.iter_mut().zip(&z) {
            *p -= shift * zi;
        }
    }
    Ok(SolutionFields {
        mesh: problem.mesh.clone(),
        dofs: problem.dofs.clone(),
        vorticity: Cochain::new(0, x_full[..n0].to_vec()),
        velocity: Cochain::new(1, x_full[n0..n0 + n1].to_vec()),
        pressure: Cochain::new(2, pressure),
        gauge_fixed: system.gauge.is_some(),
        bcs: problem.bcs,
        stats: SolveStats {
            free_dofs: free.len(),
            residual,
            inconsistency,
            projected: projector.is_some(),
        },
    })
}

/// Assemble, apply boundary conditions, gauge and solve.
pub fn solve_problem(problem: &StokesProblem) -> Result<SolutionFields> {
    let system = assemble_system(problem)?;
    let system = apply_bcs(system, problem)?;
    let system = fix_pressure_gauge(system, problem);
    solve(&system, problem)
}
