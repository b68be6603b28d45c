//! Gauss-Lobatto-Legendre grids, Lagrange nodal polynomials and edge
//! polynomials, plus their tensor products on the reference square.

use crate::error::{Error, Result};

const ROOT_TOL: f64 = 1e-15;
const MAX_NEWTON: usize = 100;

/// Legendre polynomial `P_n(x)` and its derivative.
pub fn legendre(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, x);
    let (mut d0, mut d1) = (0.0, 1.0);
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        let d2 = d0 + (2.0 * kf + 1.0) * p1;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    (p1, d1)
}

/// One-dimensional quadrature rule on [−1, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct Quadrature {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Quadrature {
    /// Gauss-Lobatto-Legendre rule with `n` points (n ≥ 2).
    pub fn lobatto(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::ZeroOrder);
        }
        let g = GllGrid::new(n - 1)?;
        Ok(Self {
            points: g.nodes,
            weights: g.weights,
        })
    }

    /// Gauss-Legendre rule with `n` points (n ≥ 1).
    pub fn gauss(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut points = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            // Tricomi-style guess, descending from +1
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut converged = false;
            for _ in 0..MAX_NEWTON {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < ROOT_TOL {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::RootFinding(n));
            }
            let (_, dp) = legendre(n, x);
            points[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Ok(Self { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Integrate `f` over [−1, 1].
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrate `f` over [a, b] by an affine change of variables.
    pub fn integrate_on(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        half * self.integrate(|s| f(mid + half * s))
    }
}

/// GLL nodes and weights for polynomial order `N` (N + 1 points).
#[derive(Clone, Debug, PartialEq)]
pub struct GllGrid {
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GllGrid {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let n = order;
        let nf = n as f64;
        let mut nodes = vec![0.0; n + 1];
        nodes[0] = -1.0;
        nodes[n] = 1.0;
        for (j, node) in nodes.iter_mut().enumerate().take(n).skip(1) {
            // Chebyshev-Gauss-Lobatto initial guess
            let mut x = -(std::f64::consts::PI * j as f64 / nf).cos();
            let mut converged = false;
            for _ in 0..MAX_NEWTON {
                let (p, dp) = legendre(n, x);
                let ddp = (2.0 * x * dp - nf * (nf + 1.0) * p) / (1.0 - x * x);
                let dx = dp / ddp;
                x -= dx;
                if dx.abs() < ROOT_TOL {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::RootFinding(n));
            }
            *node = x;
        }
        // enforce exact symmetry
        for j in 0..=n / 2 {
            let s = 0.5 * (nodes[n - j] - nodes[j]);
            nodes[j] = -s;
            nodes[n - j] = s;
        }
        if n % 2 == 0 {
            nodes[n / 2] = 0.0;
        }
        let weights = nodes
            .iter()
            .map(|&x| {
                let (p, _) = legendre(n, x);
                2.0 / (nf * (nf + 1.0) * p * p)
            })
            .collect();
        Ok(Self {
            order,
            nodes,
            weights,
        })
    }

    pub fn quadrature(&self) -> Quadrature {
        Quadrature {
            points: self.nodes.clone(),
            weights: self.weights.clone(),
        }
    }
}

/// Nodal Lagrange polynomials on a GLL grid in barycentric form.
#[derive(Clone, Debug)]
pub struct LagrangeBasis {
    nodes: Vec<f64>,
    bary: Vec<f64>,
    /// `diff[j][i] = l_i'(ξ_j)`.
    diff: Vec<Vec<f64>>,
}

impl LagrangeBasis {
    pub fn new(grid: &GllGrid) -> Self {
        let nodes = grid.nodes.clone();
        let n = nodes.len();
        let bary: Vec<f64> = (0..n)
            .map(|i| {
                1.0 / (0..n)
                    .filter(|&k| k != i)
                    .map(|k| nodes[i] - nodes[k])
                    .product::<f64>()
            })
            .collect();
        let mut diff = vec![vec![0.0; n]; n];
        for j in 0..n {
            let mut diag = 0.0;
            for i in 0..n {
                if i != j {
                    let d = (bary[i] / bary[j]) / (nodes[j] - nodes[i]);
                    diff[j][i] = d;
                    diag -= d;
                }
            }
            diff[j][j] = diag;
        }
        Self { nodes, bary, diff }
    }

    pub fn order(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// All `l_i(x)`, i = 0..=N.
    pub fn eval_all(&self, x: f64) -> Vec<f64> {
        if let Some(p) = self.nodes.iter().position(|&xi| xi == x) {
            let mut v = vec![0.0; self.nodes.len()];
            v[p] = 1.0;
            return v;
        }
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.bary)
            .map(|(&xi, &b)| b / (x - xi))
            .collect();
        let s: f64 = terms.iter().sum();
        terms.into_iter().map(|t| t / s).collect()
    }

    /// All `l_i'(x)`. Uses the exact identity `l_i' = Σ_j l_j(x) l_i'(ξ_j)`,
    /// valid because `l_i'` has degree N − 1.
    pub fn deriv_all(&self, x: f64) -> Vec<f64> {
        let l = self.eval_all(x);
        let n = self.nodes.len();
        let mut out = vec![0.0; n];
        for (j, lj) in l.iter().enumerate() {
            if *lj == 0.0 {
                continue;
            }
            for (o, d) in out.iter_mut().zip(&self.diff[j]) {
                *o += lj * d;
            }
        }
        out
    }

    pub fn eval(&self, i: usize, x: f64) -> Result<f64> {
        self.check(i)?;
        Ok(self.eval_all(x)[i])
    }

    pub fn deriv(&self, i: usize, x: f64) -> Result<f64> {
        self.check(i)?;
        Ok(self.deriv_all(x)[i])
    }

    fn check(&self, i: usize) -> Result<()> {
        if i > self.order() {
            return Err(Error::Index {
                index: i,
                lo: 0,
                hi: self.order(),
            });
        }
        Ok(())
    }
}

/// Edge polynomials `ε_i = −Σ_{k<i} l_k'`, i = 1..=N, with unit integral over
/// the i-th GLL subinterval and zero integral over the others.
#[derive(Clone, Debug)]
pub struct EdgeBasis {
    lagrange: LagrangeBasis,
}

impl EdgeBasis {
    pub fn new(lagrange: LagrangeBasis) -> Self {
        Self { lagrange }
    }

    pub fn order(&self) -> usize {
        self.lagrange.order()
    }

    /// `ε_1(x) … ε_N(x)` stored at positions 0..N.
    pub fn eval_all(&self, x: f64) -> Vec<f64> {
        let dl = self.lagrange.deriv_all(x);
        let mut acc = 0.0;
        dl[..dl.len() - 1]
            .iter()
            .map(|d| {
                acc -= d;
                acc
            })
            .collect()
    }

    /// `ε_i(x)` for 1 ≤ i ≤ N.
    pub fn eval(&self, i: usize, x: f64) -> Result<f64> {
        if i == 0 || i > self.order() {
            return Err(Error::Index {
                index: i,
                lo: 1,
                hi: self.order(),
            });
        }
        Ok(self.eval_all(x)[i - 1])
    }
}

/// A tensor-product basis function on the reference square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisFn {
    /// `l_i(ξ) l_j(η)`, 0 ≤ i, j ≤ N
    Zero { i: usize, j: usize },
    /// `ε_i(ξ) l_j(η) dξ`, 1 ≤ i ≤ N, 0 ≤ j ≤ N
    OneXi { i: usize, j: usize },
    /// `l_i(ξ) ε_j(η) dη`, 0 ≤ i ≤ N, 1 ≤ j ≤ N
    OneEta { i: usize, j: usize },
    /// `ε_i(ξ) ε_j(η) dξ∧dη`, 1 ≤ i, j ≤ N
    Two { i: usize, j: usize },
}

/// Value of a tensor basis function; 1-forms report reference components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BasisValue {
    Scalar(f64),
    OneForm { dxi: f64, deta: f64 },
}

/// Basis values at a fixed list of 1D points, for fast tensor evaluation.
#[derive(Clone, Debug)]
pub struct BasisTable {
    pub points: Vec<f64>,
    /// `l[i][q]`
    pub l: Vec<Vec<f64>>,
    /// `dl[i][q]`
    pub dl: Vec<Vec<f64>>,
    /// `e[i-1][q]` for edge function i
    pub e: Vec<Vec<f64>>,
}

/// GLL grid with its nodal and edge bases for one order N.
#[derive(Clone, Debug)]
pub struct GllBasis {
    pub grid: GllGrid,
    pub lagrange: LagrangeBasis,
    pub edge: EdgeBasis,
}

impl GllBasis {
    pub fn new(order: usize) -> Result<Self> {
        let grid = GllGrid::new(order)?;
        let lagrange = LagrangeBasis::new(&grid);
        let edge = EdgeBasis::new(lagrange.clone());
        Ok(Self {
            grid,
            lagrange,
            edge,
        })
    }

    pub fn order(&self) -> usize {
        self.grid.order
    }

    pub fn tensor_eval(&self, f: BasisFn, xi: f64, eta: f64) -> Result<BasisValue> {
        let n = self.order();
        let node = |i: usize| {
            if i <= n {
                Ok(())
            } else {
                Err(Error::Index {
                    index: i,
                    lo: 0,
                    hi: n,
                })
            }
        };
        let l = |i, x| self.lagrange.eval(i, x);
        let e = |i, x| self.edge.eval(i, x);
        Ok(match f {
            BasisFn::Zero { i, j } => {
                node(i)?;
                node(j)?;
                BasisValue::Scalar(l(i, xi)? * l(j, eta)?)
            }
            BasisFn::OneXi { i, j } => {
                node(j)?;
                BasisValue::OneForm {
                    dxi: e(i, xi)? * l(j, eta)?,
                    deta: 0.0,
                }
            }
            BasisFn::OneEta { i, j } => {
                node(i)?;
                BasisValue::OneForm {
                    dxi: 0.0,
                    deta: l(i, xi)? * e(j, eta)?,
                }
            }
            BasisFn::Two { i, j } => BasisValue::Scalar(e(i, xi)? * e(j, eta)?),
        })
    }

    pub fn table(&self, points: &[f64]) -> BasisTable {
        let n = self.order();
        let mut l = vec![vec![0.0; points.len()]; n + 1];
        let mut dl = vec![vec![0.0; points.len()]; n + 1];
        let mut e = vec![vec![0.0; points.len()]; n];
        for (q, &x) in points.iter().enumerate() {
            for (i, v) in self.lagrange.eval_all(x).into_iter().enumerate() {
                l[i][q] = v;
            }
            for (i, v) in self.lagrange.deriv_all(x).into_iter().enumerate() {
                dl[i][q] = v;
            }
            for (i, v) in self.edge.eval_all(x).into_iter().enumerate() {
                e[i][q] = v;
            }
        }
        BasisTable {
            points: points.to_vec(),
            l,
            dl,
            e,
        }
    }
}
