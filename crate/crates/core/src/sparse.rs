//! Minimal compressed-row sparse matrix used for assembly.

use std::io::Write;

use crate::error::{Error, Result};
use crate::topology::IncidenceMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseMatrix {
    /// Duplicates are summed in insertion order, so two entries fed the same
    /// sequence of contributions compare bitwise equal.
    pub fn from_triplets(nrows: usize, ncols: usize, mut trips: Vec<(usize, usize, f64)>) -> Self {
        trips.sort_by_key(|t| (t.0, t.1));
        let mut row_ptr = vec![0; nrows + 1];
        let mut cols = Vec::with_capacity(trips.len());
        let mut vals: Vec<f64> = Vec::with_capacity(trips.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in trips {
            debug_assert!(r < nrows && c < ncols);
            if last == Some((r, c)) {
                *vals.last_mut().expect("entry exists") += v;
            } else {
                cols.push(c);
                vals.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..nrows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self {
            nrows,
            ncols,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn from_incidence(e: &IncidenceMatrix) -> Self {
        let trips = e.entries().map(|(i, c, v)| (i, c, f64::from(v))).collect();
        Self::from_triplets(e.nrows(), e.ncols(), trips)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nrows).flat_map(move |i| self.row(i).map(move |(c, v)| (i, c, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[r.clone()].binary_search(&j) {
            Ok(p) => self.vals[r.start + p],
            Err(_) => 0.0,
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.ncols {
            return Err(Error::Length {
                expected: self.ncols,
                found: x.len(),
            });
        }
        Ok((0..self.nrows)
            .map(|i| self.row(i).map(|(c, v)| v * x[c]).sum())
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let trips = self.triplets().map(|(i, j, v)| (j, i, v)).collect();
        Self::from_triplets(self.ncols, self.nrows, trips)
    }

    /// Sparse product `self · rhs`.
    pub fn matmul(&self, rhs: &SparseMatrix) -> Result<Self> {
        if self.ncols != rhs.nrows {
            return Err(Error::Length {
                expected: self.ncols,
                found: rhs.nrows,
            });
        }
        let mut acc = vec![0.0; rhs.ncols];
        let mut mark = vec![usize::MAX; rhs.ncols];
        let mut trips = Vec::new();
        for i in 0..self.nrows {
            let mut touched = Vec::new();
            for (k, a) in self.row(i) {
                for (j, b) in rhs.row(k) {
                    if mark[j] != i {
                        mark[j] = i;
                        acc[j] = 0.0;
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            trips.extend(touched.into_iter().map(|j| (i, j, acc[j])));
        }
        Ok(Self::from_triplets(self.nrows, rhs.ncols, trips))
    }

    /// Exact (bitwise) symmetry test.
    pub fn is_symmetric(&self) -> bool {
        self.nrows == self.ncols && self.triplets().all(|(i, j, v)| self.get(j, i) == v)
    }

    pub fn quad_form(&self, x: &[f64]) -> Result<f64> {
        let y = self.mul_vec(x)?;
        Ok(x.iter().zip(&y).map(|(a, b)| a * b).sum())
    }

    pub fn write_coo<W: Write>(&self, mut w: W) -> Result<()> {
        for (i, j, v) in self.triplets() {
            writeln!(w, "{i} {j} {v:.17e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_summed_and_product() {
        let a = SparseMatrix::from_triplets(2, 2, vec![(0, 0, 1.0), (0, 0, 2.0), (1, 0, 1.0)]);
        assert_eq!(a.get(0, 0), 3.0);
        assert_eq!(a.nnz(), 2);
        let b = a.matmul(&a.transpose()).unwrap();
        assert_eq!(b.get(0, 0), 9.0);
        assert_eq!(b.get(0, 1), 3.0);
        assert!(b.is_symmetric());
        assert_eq!(a.mul_vec(&[1.0, 5.0]).unwrap(), vec![3.0, 1.0]);
    }
}
