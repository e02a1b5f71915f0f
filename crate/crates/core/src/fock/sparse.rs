//! Column-compressed sparse complex matrices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;

/// A sparse vector: sorted `(index, value)` pairs without explicit zeros.
pub type SparseVec = Vec<(usize, Complex64)>;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    cols: Vec<Vec<(usize, Complex64)>>,
}

fn compress(entries: BTreeMap<usize, Complex64>) -> SparseVec {
    entries.into_iter().filter(|(_, v)| *v != Complex64::new(0.0, 0.0)).collect()
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix { dim, cols: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        SparseMatrix { dim, cols: (0..dim).map(|j| vec![(j, Complex64::new(1.0, 0.0))]).collect() }
    }

    /// A matrix with at most one unit entry per column.
    pub fn from_column_targets(targets: impl IntoIterator<Item = Option<usize>>, dim: usize) -> Self {
        let cols = targets.into_iter().map(|t| t.map(|i| vec![(i, Complex64::new(1.0, 0.0))]).unwrap_or_default()).collect::<Vec<_>>();
        assert_eq!(cols.len(), dim);
        SparseMatrix { dim, cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, j: usize) -> &[(usize, Complex64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn apply(&self, v: &[(usize, Complex64)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Complex64> = BTreeMap::new();
        for &(j, x) in v {
            for &(i, a) in &self.cols[j] {
                *acc.entry(i).or_default() += a * x;
            }
        }
        compress(acc)
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        SparseMatrix { dim: self.dim, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Complex64> = a.iter().copied().collect();
                for &(i, x) in b {
                    *acc.entry(i).or_default() += x;
                }
                compress(acc)
            })
            .collect();
        SparseMatrix { dim: self.dim, cols }
    }

    pub fn scale(&self, c: Complex64) -> SparseMatrix {
        if c == Complex64::new(0.0, 0.0) {
            return SparseMatrix::zeros(self.dim);
        }
        SparseMatrix { dim: self.dim, cols: self.cols.iter().map(|col| col.iter().map(|&(i, x)| (i, x * c)).collect()).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.dim];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                cols[i].push((j, x.conj()));
            }
        }
        SparseMatrix { dim: self.dim, cols }
    }

    /// Entries in `{0, 1}` with at most one nonzero per row and column.
    pub fn is_partial_permutation(&self) -> bool {
        let mut row_used = vec![false; self.dim];
        for col in &self.cols {
            if col.len() > 1 {
                return false;
            }
            for &(i, x) in col {
                if x != Complex64::new(1.0, 0.0) || row_used[i] {
                    return false;
                }
                row_used[i] = true;
            }
        }
        true
    }

    /// Coordinate dump, one `row col re im` line per nonzero, column-major.
    pub fn to_coordinate_text(&self) -> String {
        let mut out = String::new();
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                writeln!(out, "{i} {j} {:e} {:e}", x.re, x.im).expect("write to string");
            }
        }
        out
    }
}

/// Euclidean distance between two sparse vectors.
pub fn distance(a: &[(usize, Complex64)], b: &[(usize, Complex64)]) -> f64 {
    let mut acc: BTreeMap<usize, Complex64> = a.iter().copied().collect();
    for &(i, x) in b {
        *acc.entry(i).or_default() -= x;
    }
    acc.values().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

pub fn basis_vector(j: usize) -> SparseVec {
    vec![(j, Complex64::new(1.0, 0.0))]
}
