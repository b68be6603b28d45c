//! Degree-of-freedom bookkeeping, mass matrices, reduction and reconstruction
//! of analytic forms, and boundary integral vectors.
//!
//! 1-form cochains are outer-oriented fluxes. In proxy notation a 1-form is
//! `−v dx + u dy`; a vertical edge carries `∫ u dy` (flux toward +x) and a
//! horizontal edge carries `∫ v dx` (flux toward +y). Consequently the
//! reconstruction basis of a horizontal edge is `−ε_i(ξ) l_j(η) dξ` and that
//! of a vertical edge is `l_i(ξ) ε_j(η) dη`.

use crate::basis::{BasisTable, Quadrature};
use crate::error::{Error, Result};
use crate::geometry::{MappedMesh, QuadRule};
use crate::sparse::SparseMatrix;
use crate::topology::{CellComplex, Cochain, IncidenceMatrix};

/// Boundary segments of the unit square, in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Segment {
    Bottom,
    Right,
    Top,
    Left,
}

impl Segment {
    pub const ALL: [Segment; 4] = [Segment::Bottom, Segment::Right, Segment::Top, Segment::Left];

    pub fn name(self) -> &'static str {
        match self {
            Segment::Bottom => "bottom",
            Segment::Right => "right",
            Segment::Top => "top",
            Segment::Left => "left",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Sign of the reference edge parameter relative to the counterclockwise
    /// boundary traversal.
    pub fn ccw_sign(self) -> f64 {
        match self {
            Segment::Bottom | Segment::Right => 1.0,
            Segment::Top | Segment::Left => -1.0,
        }
    }

    /// Sign of the outward normal relative to the flux orientation of the
    /// boundary edges (+x for vertical, +y for horizontal).
    pub fn outward_sign(self) -> f64 {
        match self {
            Segment::Right | Segment::Top => 1.0,
            Segment::Bottom | Segment::Left => -1.0,
        }
    }
}

/// Local-to-global maps and boundary cell lists.
#[derive(Clone, Debug)]
pub struct DofMap {
    pub order: usize,
    pub m: usize,
    /// Local complex of one element (N×N).
    pub local_complex: CellComplex,
    /// `local[k][element][local id] = global id`
    pub local: [Vec<Vec<usize>>; 3],
    /// Boundary 0-cells per segment, ordered by increasing coordinate.
    pub boundary_nodes: [Vec<usize>; 4],
    /// Boundary 1-cells per segment, ordered by increasing coordinate.
    pub boundary_edges: [Vec<usize>; 4],
}

impl DofMap {
    pub fn new(mesh: &MappedMesh) -> Result<Self> {
        let n = mesh.order;
        let m = mesh.m;
        let local_complex = CellComplex::new(2, &[n, n])?;
        let global = &mesh.complex;
        let mut local: [Vec<Vec<usize>>; 3] = Default::default();
        for ey in 0..m {
            for ex in 0..m {
                for (k, maps) in local.iter_mut().enumerate() {
                    let ids = (0..local_complex.count(k))
                        .map(|id| {
                            let c = local_complex.cell(k, id)?;
                            let g = [ex * n + c.index[0], ey * n + c.index[1], 0];
                            global
                                .cell_id(c.axes, g)
                                .ok_or(Error::Config("local cell outside global complex".into()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    maps.push(ids);
                }
            }
        }
        let kk = m * n;
        let node = |i, j| global.cell_id(0, [i, j, 0]).expect("node");
        let hedge = |i, j| global.cell_id(0b01, [i, j, 0]).expect("edge");
        let vedge = |i, j| global.cell_id(0b10, [i, j, 0]).expect("edge");
        let boundary_nodes = [
            (0..=kk).map(|i| node(i, 0)).collect(),
            (0..=kk).map(|j| node(kk, j)).collect(),
            (0..=kk).map(|i| node(i, kk)).collect(),
            (0..=kk).map(|j| node(0, j)).collect(),
        ];
        let boundary_edges = [
            (0..kk).map(|i| hedge(i, 0)).collect(),
            (0..kk).map(|j| vedge(kk, j)).collect(),
            (0..kk).map(|i| hedge(i, kk)).collect(),
            (0..kk).map(|j| vedge(0, j)).collect(),
        ];
        Ok(Self {
            order: n,
            m,
            local_complex,
            local,
            boundary_nodes,
            boundary_edges,
        })
    }

    pub fn count(&self, k: usize) -> usize {
        let kk = self.m * self.order;
        match k {
            0 => (kk + 1) * (kk + 1),
            1 => 2 * kk * (kk + 1),
            2 => kk * kk,
            _ => 0,
        }
    }

    /// Elements touching a segment, ordered by increasing coordinate.
    pub fn boundary_elements(&self, s: Segment) -> Vec<usize> {
        let m = self.m;
        match s {
            Segment::Bottom => (0..m).collect(),
            Segment::Right => (0..m).map(|j| m - 1 + m * j).collect(),
            Segment::Top => (0..m).map(|i| i + m * (m - 1)).collect(),
            Segment::Left => (0..m).map(|j| m * j).collect(),
        }
    }

    /// Local 1-cell id of the horizontal edge with edge index `i` (1..=N)
    /// and node row `j`.
    pub fn local_hedge(&self, i: usize, j: usize) -> usize {
        (i - 1) + self.order * j
    }

    /// Local 1-cell id of the vertical edge in node column `i` with edge
    /// index `j` (1..=N).
    pub fn local_vedge(&self, i: usize, j: usize) -> usize {
        let n = self.order;
        n * (n + 1) + i + (n + 1) * (j - 1)
    }

    pub fn local_node(&self, i: usize, j: usize) -> usize {
        i + (self.order + 1) * j
    }

    pub fn local_face(&self, i: usize, j: usize) -> usize {
        (i - 1) + self.order * (j - 1)
    }
}

/// Global coboundary matrix `E^(k,k-1)` assembled from element-local
/// incidence rows through the DOF map.
pub fn assemble_global_incidence(dofs: &DofMap, k: usize) -> Result<IncidenceMatrix> {
    let local = dofs.local_complex.incidence(k)?;
    let mut rows: Vec<Option<Vec<(usize, i8)>>> = vec![None; dofs.count(k)];
    for e in 0..dofs.local[k].len() {
        for li in 0..local.nrows() {
            let gi = dofs.local[k][e][li];
            let row: Vec<(usize, i8)> = local
                .row(li)
                .map(|(c, v)| (dofs.local[k - 1][e][c], v))
                .collect();
            match &rows[gi] {
                Some(prev) => {
                    let mut a = prev.clone();
                    let mut b = row.clone();
                    a.sort_unstable();
                    b.sort_unstable();
                    if a != b {
                        return Err(Error::Config(format!(
                            "inconsistent incidence for shared {k}-cell {gi}"
                        )));
                    }
                }
                None => rows[gi] = Some(row),
            }
        }
    }
    let rows = rows
        .into_iter()
        .map(|r| r.ok_or(Error::Config("uncovered cell".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(IncidenceMatrix::from_rows(k, dofs.count(k - 1), rows))
}

/// Reference components `[dξ, dη]` of every local 1-form basis function at
/// tensor point (qx, qy) of `table`; horizontal edges carry the outer sign.
fn one_form_basis(dofs: &DofMap, t: &BasisTable, qx: usize, qy: usize) -> Vec<[f64; 2]> {
    let n = dofs.order;
    let mut out = vec![[0.0; 2]; 2 * n * (n + 1)];
    for j in 0..=n {
        for i in 1..=n {
            out[dofs.local_hedge(i, j)][0] = -t.e[i - 1][qx] * t.l[j][qy];
        }
    }
    for j in 1..=n {
        for i in 0..=n {
            out[dofs.local_vedge(i, j)][1] = t.l[i][qx] * t.e[j - 1][qy];
        }
    }
    out
}

/// Values of all local k-form basis functions at every tensor quadrature
/// point, `vals[q][a]`; scalar forms use component 0.
fn basis_at_points(dofs: &DofMap, t: &BasisTable, k: usize) -> Vec<Vec<[f64; 2]>> {
    let n = dofs.order;
    let nq = t.points.len();
    let mut vals = Vec::with_capacity(nq * nq);
    for qy in 0..nq {
        for qx in 0..nq {
            let v = match k {
                0 => {
                    let mut v = vec![[0.0; 2]; (n + 1) * (n + 1)];
                    for j in 0..=n {
                        for i in 0..=n {
                            v[dofs.local_node(i, j)][0] = t.l[i][qx] * t.l[j][qy];
                        }
                    }
                    v
                }
                1 => one_form_basis(dofs, t, qx, qy),
                _ => {
                    let mut v = vec![[0.0; 2]; n * n];
                    for j in 1..=n {
                        for i in 1..=n {
                            v[dofs.local_face(i, j)][0] = t.e[i - 1][qx] * t.e[j - 1][qy];
                        }
                    }
                    v
                }
            };
            vals.push(v);
        }
    }
    vals
}

/// Mass matrix of degree k.
#[derive(Clone, Debug)]
pub struct MassMatrix {
    pub degree: usize,
    pub matrix: SparseMatrix,
}

/// Element-local mass matrix (upper triangle mirrored, so exactly symmetric).
fn local_mass(mesh: &MappedMesh, dofs: &DofMap, k: usize, rule: QuadRule, e: usize, basis: &[Vec<[f64; 2]>]) -> Vec<Vec<f64>> {
    let metric = mesh.metric(rule);
    let w = &metric.quad.weights;
    let nq = w.len();
    let nloc = dofs.local_complex.count(k);
    let mut out = vec![vec![0.0; nloc]; nloc];
    for (q, md) in metric.data[e].iter().enumerate() {
        let wq = w[q % nq] * w[q / nq];
        let phi = &basis[q];
        match k {
            0 | 2 => {
                let s = wq * if k == 0 { md.w0 } else { md.w2 };
                for a in 0..nloc {
                    let pa = phi[a][0] * s;
                    if pa == 0.0 {
                        continue;
                    }
                    for b in a..nloc {
                        out[a][b] += pa * phi[b][0];
                    }
                }
            }
            _ => {
                let g = md.g1;
                for a in 0..nloc {
                    let [a0, a1] = phi[a];
                    if a0 == 0.0 && a1 == 0.0 {
                        continue;
                    }
                    let ga = [
                        wq * (g[0][0] * a0 + g[1][0] * a1),
                        wq * (g[0][1] * a0 + g[1][1] * a1),
                    ];
                    for b in a..nloc {
                        out[a][b] += ga[0] * phi[b][0] + ga[1] * phi[b][1];
                    }
                }
            }
        }
    }
    for a in 0..nloc {
        for b in 0..a {
            out[a][b] = out[b][a];
        }
    }
    out
}

pub fn assemble_mass(mesh: &MappedMesh, dofs: &DofMap, k: usize, rule: QuadRule) -> Result<MassMatrix> {
    if k > 2 {
        return Err(Error::Degree { degree: k, max: 2 });
    }
    let metric = mesh.metric(rule);
    for (e, data) in metric.data.iter().enumerate() {
        if let Some(md) = data.iter().find(|md| !(md.w0 > 0.0)) {
            return Err(Error::Jacobian {
                element: e,
                xi: md.x,
                eta: md.y,
                det: md.w0,
            });
        }
    }
    let basis = basis_at_points(dofs, &metric.table, k);
    let mut trips = Vec::new();
    for e in 0..mesh.num_elements() {
        let loc = local_mass(mesh, dofs, k, rule, e, &basis);
        let g = &dofs.local[k][e];
        for (a, row) in loc.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v != 0.0 {
                    trips.push((g[a], g[b], v));
                }
            }
        }
    }
    let n = dofs.count(k);
    Ok(MassMatrix {
        degree: k,
        matrix: SparseMatrix::from_triplets(n, n, trips),
    })
}

/// An analytic form on the unit square. 1-forms are given by their velocity
/// proxy `(u, v)` of `−v dx + u dy`; 2-forms by their density.
pub enum AnalyticForm<'a> {
    Zero(&'a dyn Fn(f64, f64) -> f64),
    One(&'a dyn Fn(f64, f64) -> [f64; 2]),
    Two(&'a dyn Fn(f64, f64) -> f64),
}

fn reduction_rule(mesh: &MappedMesh) -> Result<Quadrature> {
    Quadrature::gauss(mesh.order + 3)
}

/// Point values at the mapped nodes.
pub fn reduce_0form(mesh: &MappedMesh, f: &dyn Fn(f64, f64) -> f64) -> Cochain {
    let kk = mesh.m * mesh.order;
    let mut vals = Vec::with_capacity((kk + 1) * (kk + 1));
    for gj in 0..=kk {
        for gi in 0..=kk {
            let (x, y) = mesh.node_position(gi, gj);
            vals.push(f(x, y));
        }
    }
    Cochain::new(0, vals)
}

/// Outer fluxes across every 1-cell.
pub fn reduce_1form(mesh: &MappedMesh, dofs: &DofMap, f: &dyn Fn(f64, f64) -> [f64; 2]) -> Result<Cochain> {
    let q = reduction_rule(mesh)?;
    let nodes = &mesh.basis.grid.nodes;
    let n = mesh.order;
    let mut vals = vec![0.0; dofs.count(1)];
    let mut done = vec![false; vals.len()];
    for (e, map) in mesh.elements.iter().enumerate() {
        let g = &dofs.local[1][e];
        for j in 0..=n {
            for i in 1..=n {
                let id = g[dofs.local_hedge(i, j)];
                if done[id] {
                    continue;
                }
                let eta = nodes[j];
                vals[id] = q.integrate_on(nodes[i - 1], nodes[i], |xi| {
                    let (x, y) = map.map_eval(xi, eta);
                    let jac = map.jacobian(xi, eta);
                    let [u, v] = f(x, y);
                    v * jac.m[0][0] - u * jac.m[1][0]
                });
                done[id] = true;
            }
        }
        for j in 1..=n {
            for i in 0..=n {
                let id = g[dofs.local_vedge(i, j)];
                if done[id] {
                    continue;
                }
                let xi = nodes[i];
                vals[id] = q.integrate_on(nodes[j - 1], nodes[j], |eta| {
                    let (x, y) = map.map_eval(xi, eta);
                    let jac = map.jacobian(xi, eta);
                    let [u, v] = f(x, y);
                    u * jac.m[1][1] - v * jac.m[0][1]
                });
                done[id] = true;
            }
        }
    }
    Ok(Cochain::new(1, vals))
}

/// Integrals of a density over every 2-cell.
pub fn reduce_2form(mesh: &MappedMesh, dofs: &DofMap, f: &dyn Fn(f64, f64) -> f64) -> Result<Cochain> {
    let q = reduction_rule(mesh)?;
    let nodes = &mesh.basis.grid.nodes;
    let n = mesh.order;
    let mut vals = vec![0.0; dofs.count(2)];
    for (e, map) in mesh.elements.iter().enumerate() {
        for j in 1..=n {
            for i in 1..=n {
                let id = dofs.local[2][e][dofs.local_face(i, j)];
                vals[id] = q.integrate_on(nodes[j - 1], nodes[j], |eta| {
                    q.integrate_on(nodes[i - 1], nodes[i], |xi| {
                        let (x, y) = map.map_eval(xi, eta);
                        f(x, y) * map.jacobian(xi, eta).det
                    })
                });
            }
        }
    }
    Ok(Cochain::new(2, vals))
}

/// Reduction of any analytic form.
pub fn reduce(mesh: &MappedMesh, dofs: &DofMap, form: &AnalyticForm<'_>) -> Result<Cochain> {
    match form {
        AnalyticForm::Zero(f) => Ok(reduce_0form(mesh, *f)),
        AnalyticForm::One(f) => reduce_1form(mesh, dofs, *f),
        AnalyticForm::Two(f) => reduce_2form(mesh, dofs, *f),
    }
}

/// A reconstructed field value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FieldValue {
    Scalar(f64),
    /// Velocity proxy `(u, v)` of a 1-form.
    Vector([f64; 2]),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSample {
    pub element: usize,
    pub xi: f64,
    pub eta: f64,
    pub x: f64,
    pub y: f64,
    pub value: FieldValue,
}

/// Reference-component value of cochain `c` restricted to element `e` at a
/// reference point: 0- and 2-forms in slot 0 (2-forms as the coefficient of
/// dξ∧dη), 1-forms as `[α_ξ, α_η]`.
pub fn element_reference_value(mesh: &MappedMesh, dofs: &DofMap, c: &Cochain, e: usize, xi: f64, eta: f64) -> [f64; 2] {
    let b = &mesh.basis;
    let n = mesh.order;
    let g = &dofs.local[c.degree][e];
    let (lx, ly) = (b.lagrange.eval_all(xi), b.lagrange.eval_all(eta));
    let (ex, ey) = (b.edge.eval_all(xi), b.edge.eval_all(eta));
    let mut out = [0.0; 2];
    match c.degree {
        0 => {
            for j in 0..=n {
                for i in 0..=n {
                    out[0] += c.values[g[dofs.local_node(i, j)]] * lx[i] * ly[j];
                }
            }
        }
        1 => {
            for j in 0..=n {
                for i in 1..=n {
                    out[0] -= c.values[g[dofs.local_hedge(i, j)]] * ex[i - 1] * ly[j];
                }
            }
            for j in 1..=n {
                for i in 0..=n {
                    out[1] += c.values[g[dofs.local_vedge(i, j)]] * lx[i] * ey[j - 1];
                }
            }
        }
        _ => {
            for j in 1..=n {
                for i in 1..=n {
                    out[0] += c.values[g[dofs.local_face(i, j)]] * ex[i - 1] * ey[j - 1];
                }
            }
        }
    }
    out
}

/// Reference values of `c` on element `e` at every point of a tensor grid
/// described by `t`, point index `qx + n·qy`.
pub fn element_grid_values(dofs: &DofMap, c: &Cochain, e: usize, t: &BasisTable) -> Vec<[f64; 2]> {
    let n = dofs.order;
    let nq = t.points.len();
    let g = &dofs.local[c.degree][e];
    let mut out = vec![[0.0; 2]; nq * nq];
    for qy in 0..nq {
        for qx in 0..nq {
            let o = &mut out[qx + nq * qy];
            match c.degree {
                0 => {
                    for j in 0..=n {
                        let mut s = 0.0;
                        for i in 0..=n {
                            s += c.values[g[dofs.local_node(i, j)]] * t.l[i][qx];
                        }
                        o[0] += s * t.l[j][qy];
                    }
                }
                1 => {
                    for j in 0..=n {
                        for i in 1..=n {
                            o[0] -= c.values[g[dofs.local_hedge(i, j)]] * t.e[i - 1][qx] * t.l[j][qy];
                        }
                    }
                    for j in 1..=n {
                        for i in 0..=n {
                            o[1] += c.values[g[dofs.local_vedge(i, j)]] * t.l[i][qx] * t.e[j - 1][qy];
                        }
                    }
                }
                _ => {
                    for j in 1..=n {
                        for i in 1..=n {
                            o[0] += c.values[g[dofs.local_face(i, j)]] * t.e[i - 1][qx] * t.e[j - 1][qy];
                        }
                    }
                }
            }
        }
    }
    out
}

/// Push a reference value forward to a physical field value.
pub fn physical_value(degree: usize, r: [f64; 2], jac: &crate::geometry::Jacobian) -> FieldValue {
    match degree {
        0 => FieldValue::Scalar(r[0]),
        1 => {
            let a = jac.push_covector(r);
            FieldValue::Vector([a[1], -a[0]])
        }
        _ => FieldValue::Scalar(r[0] / jac.det),
    }
}

/// Evaluate cochain `c` at the given reference points of every element.
pub fn reconstruct(mesh: &MappedMesh, dofs: &DofMap, c: &Cochain, samples: &[(f64, f64)]) -> Result<Vec<FieldSample>> {
    if c.len() != dofs.count(c.degree) {
        return Err(Error::Length {
            expected: dofs.count(c.degree),
            found: c.len(),
        });
    }
    if let Some(&(a, b)) = samples
        .iter()
        .find(|(a, b)| a.abs() > 1.0 || b.abs() > 1.0 || a.is_nan() || b.is_nan())
    {
        return Err(Error::OutsideReference(a, b));
    }
    let mut out = Vec::with_capacity(samples.len() * mesh.num_elements());
    for (e, map) in mesh.elements.iter().enumerate() {
        for &(xi, eta) in samples {
            let r = element_reference_value(mesh, dofs, c, e, xi, eta);
            let jac = map.jacobian(xi, eta);
            let (x, y) = map.map_eval(xi, eta);
            out.push(FieldSample {
                element: e,
                xi,
                eta,
                x,
                y,
                value: physical_value(c.degree, r, &jac),
            });
        }
    }
    Ok(out)
}

/// Which boundary integral a vector holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    /// Tangential velocity against 0-form test traces.
    Tangential,
    /// Pressure against 1-form (normal flux) test traces.
    Pressure,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryVector {
    pub kind: BoundaryKind,
    pub values: Vec<f64>,
}

fn boundary_rule(mesh: &MappedMesh, rule: QuadRule) -> Result<Quadrature> {
    rule.rule(mesh.order)
}

/// Reference point on the element edge lying on segment `s` at parameter `t`.
fn edge_point(s: Segment, t: f64) -> (f64, f64) {
    match s {
        Segment::Bottom => (t, -1.0),
        Segment::Right => (1.0, t),
        Segment::Top => (t, 1.0),
        Segment::Left => (-1.0, t),
    }
}

/// `∮ l_i (u·t) ds` with `t` the counterclockwise unit tangent, over the
/// given segments. `velocity` returns the full velocity vector.
pub fn assemble_b1(
    mesh: &MappedMesh,
    dofs: &DofMap,
    velocity: &dyn Fn(f64, f64) -> [f64; 2],
    segments: &[Segment],
    rule: QuadRule,
) -> Result<BoundaryVector> {
    let q = boundary_rule(mesh, rule)?;
    let t = mesh.basis.table(&q.points);
    let n = mesh.order;
    let mut vals = vec![0.0; dofs.count(0)];
    for &s in segments {
        for e in dofs.boundary_elements(s) {
            let map = &mesh.elements[e];
            for (p, (&tp, &w)) in q.points.iter().zip(&q.weights).enumerate() {
                let (xi, eta) = edge_point(s, tp);
                let (x, y) = map.map_eval(xi, eta);
                let jac = map.jacobian(xi, eta);
                let c = match s {
                    Segment::Bottom | Segment::Top => 0,
                    Segment::Right | Segment::Left => 1,
                };
                let [u, v] = velocity(x, y);
                let ut = s.ccw_sign() * (u * jac.m[0][c] + v * jac.m[1][c]);
                for a in 0..=n {
                    let local = match s {
                        Segment::Bottom => dofs.local_node(a, 0),
                        Segment::Right => dofs.local_node(n, a),
                        Segment::Top => dofs.local_node(a, n),
                        Segment::Left => dofs.local_node(0, a),
                    };
                    vals[dofs.local[0][e][local]] += w * t.l[a][p] * ut;
                }
            }
        }
    }
    Ok(BoundaryVector {
        kind: BoundaryKind::Tangential,
        values: vals,
    })
}

/// `∮ p (v_i·n) ds` over boundary 1-cells of the given segments.
pub fn assemble_b2(
    mesh: &MappedMesh,
    dofs: &DofMap,
    pressure: &dyn Fn(f64, f64) -> f64,
    segments: &[Segment],
    rule: QuadRule,
) -> Result<BoundaryVector> {
    let q = boundary_rule(mesh, rule)?;
    let t = mesh.basis.table(&q.points);
    let n = mesh.order;
    let mut vals = vec![0.0; dofs.count(1)];
    for &s in segments {
        for e in dofs.boundary_elements(s) {
            let map = &mesh.elements[e];
            for (p, (&tp, &w)) in q.points.iter().zip(&q.weights).enumerate() {
                let (xi, eta) = edge_point(s, tp);
                let (x, y) = map.map_eval(xi, eta);
                let pv = s.outward_sign() * pressure(x, y) * w;
                for a in 1..=n {
                    let local = match s {
                        Segment::Bottom => dofs.local_hedge(a, 0),
                        Segment::Top => dofs.local_hedge(a, n),
                        Segment::Right => dofs.local_vedge(n, a),
                        Segment::Left => dofs.local_vedge(0, a),
                    };
                    vals[dofs.local[1][e][local]] += pv * t.e[a - 1][p];
                }
            }
        }
    }
    Ok(BoundaryVector {
        kind: BoundaryKind::Pressure,
        values: vals,
    })
}

/// Consistent load `(φ_a, f)_Ω` for a 1-form given by its proxy `(u, v)`.
pub fn consistent_load(mesh: &MappedMesh, dofs: &DofMap, f: &dyn Fn(f64, f64) -> [f64; 2], rule: QuadRule) -> Vec<f64> {
    let metric = mesh.metric(rule);
    let w = &metric.quad.weights;
    let nq = w.len();
    let basis = basis_at_points(dofs, &metric.table, 1);
    let mut out = vec![0.0; dofs.count(1)];
    for e in 0..mesh.num_elements() {
        let g = &dofs.local[1][e];
        for (q, md) in metric.data[e].iter().enumerate() {
            let wq = w[q % nq] * w[q / nq];
            let [u, v] = f(md.x, md.y);
            // J⁻¹ applied to the physical covector (−v, u), times det J
            let m = md.jac.m;
            let c = [m[1][1] * -v - m[0][1] * u, -m[1][0] * -v + m[0][0] * u];
            for (a, phi) in basis[q].iter().enumerate() {
                out[g[a]] += wq * (phi[0] * c[0] + phi[1] * c[1]);
            }
        }
    }
    out
}
