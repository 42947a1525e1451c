//! Compressed-row square matrices: assembly, products and the hand-off to
//! faer's sparse factorizations.

use faer::sparse::{SparseColMat, Triplet};

use crate::error::{GridError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl CsrMatrix {
    /// Rows given as unsorted (column, value) lists; duplicates are summed.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(c, _)| c);
            let start = cols.len();
            for (c, v) in row {
                debug_assert!(c < n);
                if cols.len() > start && cols[cols.len() - 1] == c {
                    *vals.last_mut().expect("nonempty") += v;
                } else {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        CsrMatrix { n, row_ptr, cols, vals }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows((0..n).map(|i| vec![(i, 1.0)]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[r.clone()].binary_search(&j) {
            Ok(p) => self.vals[r.start + p],
            Err(_) => 0.0,
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).map(|(j, v)| v * x[j]).sum()).collect()
    }

    pub fn matmul(&self, other: &CsrMatrix) -> CsrMatrix {
        let rows = (0..self.n)
            .map(|i| {
                let mut acc = Vec::new();
                for (q, a) in self.row(i) {
                    acc.extend(other.row(q).map(|(p, b)| (p, a * b)));
                }
                acc
            })
            .collect();
        Self::from_rows(rows)
    }

    /// self + s·other.
    pub fn add_scaled(&self, other: &CsrMatrix, s: f64) -> CsrMatrix {
        let rows = (0..self.n)
            .map(|i| self.row(i).chain(other.row(i).map(|(j, v)| (j, s * v))).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn scaled(&self, s: f64) -> CsrMatrix {
        CsrMatrix { vals: self.vals.iter().map(|v| s * v).collect(), ..self.clone() }
    }

    /// max |a_ij − a_ji| relative to max |a_ij|.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                scale = scale.max(v.abs());
                worst = worst.max((v - self.get(j, i)).abs());
            }
        }
        if scale == 0.0 {
            0.0
        } else {
            worst / scale
        }
    }

    pub fn to_faer(&self) -> Result<SparseColMat<usize, f64>> {
        let mut trip = Vec::with_capacity(self.nnz());
        for i in 0..self.n {
            trip.extend(self.row(i).map(|(j, v)| Triplet::new(i, j, v)));
        }
        SparseColMat::try_new_from_triplets(self.n, self.n, &trip)
            .map_err(|e| GridError::Factorization(format!("{e:?}")))
    }
}
