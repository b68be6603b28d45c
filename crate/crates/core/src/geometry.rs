//! Multi-element meshes of the unit square with analytic element maps and
//! precomputed metric data at quadrature points.

use std::f64::consts::PI;
use std::io::Write;

use crate::basis::{BasisTable, GllBasis, Quadrature};
use crate::error::{Error, Result};
use crate::topology::CellComplex;

/// Amplitude of the global sine perturbation.
pub const SINE_AMPLITUDE: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Cartesian,
    /// Affine tile followed by
    /// `x = ½ + ½(ξ + 0.2 sin πξ sin πη)`, `y = ½ + ½(η + 0.2 sin πξ sin πη)`
    /// in global reference coordinates.
    Sine,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Cartesian => "cartesian",
            MapKind::Sine => "sine",
        }
    }
}

/// Placement of element boundaries along each axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    Uniform,
    /// Element boundaries at the GLL points of order M mapped to [0, 1].
    BoundaryRefined,
}

/// Which quadrature rule to use for volume integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum QuadRule {
    /// GLL with N + 1 points per axis.
    #[default]
    Default,
    /// Gauss-Legendre with N + 3 points per axis.
    Over,
}

impl QuadRule {
    pub fn rule(self, order: usize) -> Result<Quadrature> {
        match self {
            QuadRule::Default => Quadrature::lobatto(order + 1),
            QuadRule::Over => Quadrature::gauss(order + 3),
        }
    }
}

/// Jacobian `m[r][c] = ∂x_r/∂ξ_c` and its determinant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jacobian {
    pub m: [[f64; 2]; 2],
    pub det: f64,
}

impl Jacobian {
    fn new(m: [[f64; 2]; 2]) -> Self {
        Self {
            m,
            det: m[0][0] * m[1][1] - m[0][1] * m[1][0],
        }
    }

    /// Physical covariant components from reference ones: `J⁻ᵀ α`.
    pub fn push_covector(&self, a: [f64; 2]) -> [f64; 2] {
        let m = &self.m;
        [
            (m[1][1] * a[0] - m[1][0] * a[1]) / self.det,
            (-m[0][1] * a[0] + m[0][0] * a[1]) / self.det,
        ]
    }
}

/// Affine tile `[x0,x1]×[y0,y1]` of the unit square, optionally composed with
/// the global sine map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElementMap {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub kind: MapKind,
}

impl ElementMap {
    fn tile(&self, xi: f64, eta: f64) -> (f64, f64) {
        (
            self.x[0] + 0.5 * (xi + 1.0) * (self.x[1] - self.x[0]),
            self.y[0] + 0.5 * (eta + 1.0) * (self.y[1] - self.y[0]),
        )
    }

    pub fn map_eval(&self, xi: f64, eta: f64) -> (f64, f64) {
        let (tx, ty) = self.tile(xi, eta);
        match self.kind {
            MapKind::Cartesian => (tx, ty),
            MapKind::Sine => sine_map(2.0 * tx - 1.0, 2.0 * ty - 1.0),
        }
    }

    pub fn jacobian(&self, xi: f64, eta: f64) -> Jacobian {
        let a = 0.5 * (self.x[1] - self.x[0]);
        let b = 0.5 * (self.y[1] - self.y[0]);
        match self.kind {
            MapKind::Cartesian => Jacobian::new([[a, 0.0], [0.0, b]]),
            MapKind::Sine => {
                let (tx, ty) = self.tile(xi, eta);
                let g = sine_jacobian(2.0 * tx - 1.0, 2.0 * ty - 1.0);
                let m = g.m;
                Jacobian::new([
                    [m[0][0] * 2.0 * a, m[0][1] * 2.0 * b],
                    [m[1][0] * 2.0 * a, m[1][1] * 2.0 * b],
                ])
            }
        }
    }
}

/// The global sine map on [−1, 1]².
pub fn sine_map(xi: f64, eta: f64) -> (f64, f64) {
    let s = SINE_AMPLITUDE * (PI * xi).sin() * (PI * eta).sin();
    (0.5 + 0.5 * (xi + s), 0.5 + 0.5 * (eta + s))
}

/// Analytic Jacobian of [`sine_map`].
pub fn sine_jacobian(xi: f64, eta: f64) -> Jacobian {
    let sx = SINE_AMPLITUDE * PI * (PI * xi).cos() * (PI * eta).sin();
    let sy = SINE_AMPLITUDE * PI * (PI * xi).sin() * (PI * eta).cos();
    Jacobian::new([
        [0.5 * (1.0 + sx), 0.5 * sy],
        [0.5 * sx, 0.5 * (1.0 + sy)],
    ])
}

/// Geometric data at one quadrature point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricData {
    pub x: f64,
    pub y: f64,
    pub jac: Jacobian,
    /// 0-form weight, `det J`
    pub w0: f64,
    /// 1-form weight, `(JᵀJ)⁻¹ det J`
    pub g1: [[f64; 2]; 2],
    /// 2-form weight, `1 / det J`
    pub w2: f64,
}

impl MetricData {
    pub fn new(x: f64, y: f64, jac: Jacobian) -> Self {
        let [[a, b], [c, d]] = jac.m;
        let (p, q, r) = (a * a + c * c, a * b + c * d, b * b + d * d);
        let det = jac.det;
        Self {
            x,
            y,
            jac,
            w0: det,
            g1: [[r / det, -q / det], [-q / det, p / det]],
            w2: 1.0 / det,
        }
    }
}

/// Metric data for element `element` of `map` at the given reference points.
pub fn metric_factors(
    map: &ElementMap,
    element: usize,
    points: &[(f64, f64)],
) -> Result<Vec<MetricData>> {
    points
        .iter()
        .map(|&(xi, eta)| {
            let jac = map.jacobian(xi, eta);
            if !(jac.det > 0.0) {
                return Err(Error::Jacobian {
                    element,
                    xi,
                    eta,
                    det: jac.det,
                });
            }
            let (x, y) = map.map_eval(xi, eta);
            Ok(MetricData::new(x, y, jac))
        })
        .collect()
}

/// Per-element metric data on a tensor quadrature grid, point index
/// `q = qx + n·qy`.
#[derive(Clone, Debug)]
pub struct ElementMetric {
    pub quad: Quadrature,
    pub table: BasisTable,
    pub data: Vec<Vec<MetricData>>,
}

/// M×M element mesh of order N on the unit square.
#[derive(Clone, Debug)]
pub struct MappedMesh {
    pub m: usize,
    pub order: usize,
    pub kind: MapKind,
    pub grading: Grading,
    /// Element boundaries in [0, 1] (same for both axes), length M + 1.
    pub breaks: Vec<f64>,
    pub elements: Vec<ElementMap>,
    pub basis: GllBasis,
    /// Global complex with (MN)² faces; element interfaces are shared.
    pub complex: CellComplex,
    default_metric: ElementMetric,
    over_metric: ElementMetric,
}

impl MappedMesh {
    pub fn build(m: usize, order: usize, kind: MapKind, grading: Grading) -> Result<Self> {
        if m == 0 {
            return Err(Error::Config("element count must be at least 1".into()));
        }
        let basis = GllBasis::new(order)?;
        let breaks: Vec<f64> = match grading {
            Grading::Uniform => (0..=m).map(|i| i as f64 / m as f64).collect(),
            Grading::BoundaryRefined => crate::basis::GllGrid::new(m)?
                .nodes
                .iter()
                .map(|x| 0.5 * (x + 1.0))
                .collect(),
        };
        let mut elements = Vec::with_capacity(m * m);
        for ey in 0..m {
            for ex in 0..m {
                elements.push(ElementMap {
                    x: [breaks[ex], breaks[ex + 1]],
                    y: [breaks[ey], breaks[ey + 1]],
                    kind,
                });
            }
        }
        let complex = CellComplex::new(2, &[m * order, m * order])?;
        let build_metric = |rule: QuadRule| -> Result<ElementMetric> {
            let quad = rule.rule(order)?;
            let table = basis.table(&quad.points);
            let pts: Vec<(f64, f64)> = quad
                .points
                .iter()
                .flat_map(|&eta| quad.points.iter().map(move |&xi| (xi, eta)))
                .collect();
            let data = elements
                .iter()
                .enumerate()
                .map(|(e, map)| metric_factors(map, e, &pts))
                .collect::<Result<_>>()?;
            Ok(ElementMetric { quad, table, data })
        };
        let default_metric = build_metric(QuadRule::Default)?;
        let over_metric = build_metric(QuadRule::Over)?;
        Ok(Self {
            m,
            order,
            kind,
            grading,
            breaks,
            elements,
            basis,
            complex,
            default_metric,
            over_metric,
        })
    }

    pub fn metric(&self, rule: QuadRule) -> &ElementMetric {
        match rule {
            QuadRule::Default => &self.default_metric,
            QuadRule::Over => &self.over_metric,
        }
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    /// Characteristic element size 1/M.
    pub fn h(&self) -> f64 {
        1.0 / self.m as f64
    }

    /// Global GLL node coordinate along an axis, node index 0..=MN, before the
    /// sine perturbation.
    pub fn tile_coord(&self, g: usize) -> f64 {
        let n = self.order;
        let (e, i) = if g == self.m * n {
            (self.m - 1, n)
        } else {
            (g / n, g % n)
        };
        let (a, b) = (self.breaks[e], self.breaks[e + 1]);
        a + 0.5 * (self.basis.grid.nodes[i] + 1.0) * (b - a)
    }

    /// Physical coordinates of global node (gi, gj).
    pub fn node_position(&self, gi: usize, gj: usize) -> (f64, f64) {
        let (tx, ty) = (self.tile_coord(gi), self.tile_coord(gj));
        match self.kind {
            MapKind::Cartesian => (tx, ty),
            MapKind::Sine => sine_map(2.0 * tx - 1.0, 2.0 * ty - 1.0),
        }
    }

    /// Find the element and reference coordinates of a physical point.
    pub fn locate(&self, x: f64, y: f64) -> Option<(usize, f64, f64)> {
        let (tx, ty) = match self.kind {
            MapKind::Cartesian => (x, y),
            MapKind::Sine => {
                let (mut a, mut b) = (2.0 * x - 1.0, 2.0 * y - 1.0);
                for _ in 0..50 {
                    let (fx, fy) = sine_map(a, b);
                    let (rx, ry) = (fx - x, fy - y);
                    let j = sine_jacobian(a, b);
                    let da = (j.m[1][1] * rx - j.m[0][1] * ry) / j.det;
                    let db = (-j.m[1][0] * rx + j.m[0][0] * ry) / j.det;
                    a -= da;
                    b -= db;
                    if da.abs().max(db.abs()) < 1e-15 {
                        break;
                    }
                }
                (0.5 * (a + 1.0), 0.5 * (b + 1.0))
            }
        };
        let find = |t: f64| -> Option<(usize, f64)> {
            let tol = 1e-12;
            if t < -tol || t > 1.0 + tol {
                return None;
            }
            let e = self.breaks[1..self.m]
                .iter()
                .take_while(|&&b| b <= t)
                .count();
            let (a, b) = (self.breaks[e], self.breaks[e + 1]);
            Some((e, (2.0 * (t - a) / (b - a) - 1.0).clamp(-1.0, 1.0)))
        };
        let (ex, xi) = find(tx)?;
        let (ey, eta) = find(ty)?;
        Some((ex + self.m * ey, xi, eta))
    }

    /// Text summary: counts and element corners.
    pub fn write_summary<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(
            w,
            "elements {} order {} map {} counts {:?}",
            self.num_elements(),
            self.order,
            self.kind.name(),
            self.complex.counts()
        )?;
        for (e, map) in self.elements.iter().enumerate() {
            let c: Vec<_> = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]
                .iter()
                .map(|&(a, b)| map.map_eval(a, b))
                .collect();
            writeln!(w, "{e} {c:?}")?;
        }
        Ok(())
    }
}
