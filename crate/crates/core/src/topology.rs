//! Oriented tensor-product cell complexes and their integer incidence matrices.
//!
//! Cells of degree `k` are identified by the set of axes they span plus a
//! multi-index. Within a degree, cells are grouped by spanned axes (axis sets in
//! lexicographic order, so in 2D all ξ-directed edges precede η-directed ones)
//! and numbered lexicographically inside a group with the first axis fastest.
//!
//! Orientation is outer: a k-cell's orientation is given by the normal to its
//! span, aligned with the positive coordinate axes. For 2D this yields the
//! stencils
//!
//! * vertical edge: `z = ω_top − ω_bottom`
//! * horizontal edge: `z = ω_left − ω_right`
//! * face: `m = u_right − u_left + v_top − v_bottom`
//!
//! where `u` lives on vertical edges and `v` on horizontal ones.

use std::io::Write;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

/// A cell of a tensor-product complex: the spanned axes (bit mask) and the
/// position of its lowest corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub axes: u8,
    pub index: [usize; 3],
}

#[derive(Clone, Debug)]
struct Group {
    axes: u8,
    extent: [usize; 3],
    offset: usize,
}

/// Cubical complex on a structured block of `edges[a]` 1-cells per axis.
#[derive(Clone, Debug)]
pub struct CellComplex {
    dim: usize,
    edges: Vec<usize>,
    groups: Vec<Vec<Group>>,
    counts: Vec<usize>,
}

impl CellComplex {
    pub fn new(dim: usize, edges: &[usize]) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::Dimension(dim));
        }
        if edges.len() != dim {
            return Err(Error::Length {
                expected: dim,
                found: edges.len(),
            });
        }
        if edges.contains(&0) {
            return Err(Error::ZeroEdges(edges.to_vec()));
        }
        let mut groups = vec![Vec::new(); dim + 1];
        let mut counts = vec![0; dim + 1];
        for (k, group) in groups.iter_mut().enumerate() {
            let mut offset = 0;
            for axes in axis_sets(dim, k) {
                let mut extent = [1; 3];
                for a in 0..dim {
                    extent[a] = if axes & (1 << a) != 0 {
                        edges[a]
                    } else {
                        edges[a] + 1
                    };
                }
                let size: usize = extent[..dim].iter().product();
                group.push(Group {
                    axes,
                    extent,
                    offset,
                });
                offset += size;
            }
            counts[k] = offset;
        }
        Ok(Self {
            dim,
            edges: edges.to_vec(),
            groups,
            counts,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn edges_per_axis(&self) -> &[usize] {
        &self.edges
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of k-cells along each axis for cells spanning `axes`.
    pub fn extent(&self, k: usize, axes: u8) -> Option<[usize; 3]> {
        self.group(k, axes).map(|g| g.extent)
    }

    fn group(&self, k: usize, axes: u8) -> Option<&Group> {
        self.groups.get(k)?.iter().find(|g| g.axes == axes)
    }

    /// Global id of the k-cell spanning `axes` with lowest corner `index`.
    pub fn cell_id(&self, axes: u8, index: [usize; 3]) -> Option<usize> {
        let k = axes.count_ones() as usize;
        let g = self.group(k, axes)?;
        let mut id = 0;
        let mut stride = 1;
        for a in 0..self.dim {
            if index[a] >= g.extent[a] {
                return None;
            }
            id += index[a] * stride;
            stride *= g.extent[a];
        }
        Some(g.offset + id)
    }

    /// Inverse of [`CellComplex::cell_id`].
    pub fn cell(&self, k: usize, id: usize) -> Result<Cell> {
        let max = self.dim;
        let groups = self.groups.get(k).ok_or(Error::Degree { degree: k, max })?;
        if id >= self.counts[k] {
            return Err(Error::Index {
                index: id,
                lo: 0,
                hi: self.counts[k].saturating_sub(1),
            });
        }
        let g = groups
            .iter()
            .rev()
            .find(|g| g.offset <= id)
            .expect("offsets start at zero");
        let mut rest = id - g.offset;
        let mut index = [0; 3];
        for a in 0..self.dim {
            index[a] = rest % g.extent[a];
            rest /= g.extent[a];
        }
        Ok(Cell {
            axes: g.axes,
            index,
        })
    }

    /// Coboundary matrix `E^(k,k-1)`: rows are k-cells, columns (k-1)-cells.
    pub fn incidence(&self, k: usize) -> Result<IncidenceMatrix> {
        if k == 0 || k > self.dim {
            return Err(Error::Degree {
                degree: k,
                max: self.dim,
            });
        }
        let mut row_ptr = vec![0];
        let mut cols = Vec::with_capacity(self.counts[k] * 2 * k);
        let mut vals = Vec::with_capacity(self.counts[k] * 2 * k);
        for id in 0..self.counts[k] {
            let cell = self.cell(k, id)?;
            let mut row: Vec<(usize, i8)> = Vec::with_capacity(2 * k);
            for a in 0..self.dim {
                if cell.axes & (1 << a) == 0 {
                    continue;
                }
                let above = (a + 1..self.dim)
                    .filter(|&b| cell.axes & (1 << b) == 0)
                    .count();
                let high: i8 = if above % 2 == 0 { 1 } else { -1 };
                let face_axes = cell.axes & !(1 << a);
                let low_id = self
                    .cell_id(face_axes, cell.index)
                    .expect("low face exists");
                let mut up = cell.index;
                up[a] += 1;
                let high_id = self.cell_id(face_axes, up).expect("high face exists");
                row.push((low_id, -high));
                row.push((high_id, high));
            }
            row.sort_unstable_by_key(|e| e.0);
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Ok(IncidenceMatrix {
            degree: k,
            nrows: self.counts[k],
            ncols: self.counts[k - 1],
            row_ptr,
            cols,
            vals,
        })
    }
}

/// Axis bit masks with `k` bits set among the first `dim`, in lexicographic
/// order of the sorted axis lists.
fn axis_sets(dim: usize, k: usize) -> Vec<u8> {
    let mut sets: Vec<Vec<usize>> = Vec::new();
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..dim {
            cur.push(a);
            rec(a + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    rec(0, dim, k, &mut Vec::new(), &mut sets);
    sets.into_iter()
        .map(|s| s.iter().fold(0u8, |m, &a| m | (1 << a)))
        .collect()
}

/// Sparse integer matrix of a coboundary operator `E^(k,k-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    degree: usize,
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<i8>,
}

impl IncidenceMatrix {
    /// Build from explicit rows; used for the globally numbered mesh complex.
    pub fn from_rows(degree: usize, ncols: usize, rows: Vec<Vec<(usize, i8)>>) -> Self {
        let mut row_ptr = vec![0];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for mut row in rows {
            row.sort_unstable_by_key(|e| e.0);
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Self {
            degree,
            nrows: row_ptr.len() - 1,
            ncols,
            row_ptr,
            cols,
            vals,
        }
    }

    /// The `k` of `E^(k,k-1)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, i8)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    /// All nonzeros as (row, col, value).
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i8)> + '_ {
        (0..self.nrows).flat_map(move |i| self.row(i).map(move |(c, v)| (i, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    /// `E x`, exact for integer types.
    pub fn apply<T>(&self, x: &[T]) -> Result<Vec<T>>
    where
        T: Copy + Default + Add<Output = T> + Sub<Output = T>,
    {
        if x.len() != self.ncols {
            return Err(Error::Length {
                expected: self.ncols,
                found: x.len(),
            });
        }
        Ok((0..self.nrows)
            .map(|i| {
                self.row(i).fold(T::default(), |acc, (c, v)| {
                    if v > 0 {
                        acc + x[c]
                    } else {
                        acc - x[c]
                    }
                })
            })
            .collect())
    }

    /// `Eᵀ y`, i.e. the boundary operator acting on chains.
    pub fn apply_transpose<T>(&self, y: &[T]) -> Result<Vec<T>>
    where
        T: Copy + Default + Add<Output = T> + Sub<Output = T>,
    {
        if y.len() != self.nrows {
            return Err(Error::Length {
                expected: self.nrows,
                found: y.len(),
            });
        }
        let mut out = vec![T::default(); self.ncols];
        for (i, c, v) in self.entries() {
            out[c] = if v > 0 { out[c] + y[i] } else { out[c] - y[i] };
        }
        Ok(out)
    }

    /// Boundary form, `(E^(k,k-1))ᵀ`.
    pub fn transpose(&self) -> IncidenceMatrix {
        let mut rows = vec![Vec::new(); self.ncols];
        for (i, c, v) in self.entries() {
            rows[c].push((i, v));
        }
        let mut t = Self::from_rows(self.degree, self.nrows, rows);
        t.degree = self.degree;
        t
    }

    /// Integer product `self · rhs` as a dense row-major matrix.
    pub fn compose(&self, rhs: &IncidenceMatrix) -> Result<Vec<Vec<i64>>> {
        if rhs.nrows != self.ncols {
            return Err(Error::Length {
                expected: self.ncols,
                found: rhs.nrows,
            });
        }
        let mut out = vec![vec![0i64; rhs.ncols]; self.nrows];
        for (i, k, a) in self.entries() {
            for (j, b) in rhs.row(k) {
                out[i][j] += i64::from(a) * i64::from(b);
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<i8>> {
        let mut out = vec![vec![0; self.ncols]; self.nrows];
        for (i, c, v) in self.entries() {
            out[i][c] = v;
        }
        out
    }

    /// Coordinate text dump, one `row col value` triple per line.
    pub fn write_coo<W: Write>(&self, mut w: W) -> Result<()> {
        for (i, c, v) in self.entries() {
            writeln!(w, "{i} {c} {v}")?;
        }
        Ok(())
    }
}

/// Real coefficients attached to the k-cells of a complex.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<f64>,
}

impl Cochain {
    pub fn new(degree: usize, values: Vec<f64>) -> Self {
        Self { degree, values }
    }

    pub fn zeros(degree: usize, len: usize) -> Self {
        Self::new(degree, vec![0.0; len])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Apply `E^(k,k-1)` to a (k-1)-cochain.
pub fn coboundary_apply(e: &IncidenceMatrix, c: &Cochain) -> Result<Cochain> {
    if c.degree + 1 != e.degree {
        return Err(Error::Degree {
            degree: c.degree,
            max: e.degree - 1,
        });
    }
    Ok(Cochain::new(e.degree, e.apply(&c.values)?))
}
