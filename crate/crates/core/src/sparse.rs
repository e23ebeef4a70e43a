//! Compressed-row sparse matrices over a [`Semiring`].
//!
//! Entry `(i, j) = v` is read as an edge from node `j` to node `i` carrying
//! label `v`: column `j` lists the outgoing edges of node `j`, row `i` its
//! incoming edges. Within a row, column indices are strictly increasing and
//! no stored value is zero.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::perm::Perm;
use crate::semiring::Semiring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparseError {
    #[error("entry ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {left_cols} columns against {right_rows} rows")]
    DimensionMismatch { left_cols: usize, right_rows: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("permutation of size {perm} cannot reorder dimension {dim}")]
    PermSize { perm: usize, dim: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMat<S> {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<S>,
}

/// Labelled adjacency matrices.
pub type NatMat = SparseMat<u32>;
/// Boolean matrices, e.g. permutation matrices.
pub type BoolMat = SparseMat<bool>;

impl<S: Semiring> SparseMat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_ptr: vec![0; rows + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![S::ONE; n],
        }
    }

    /// Builds a matrix from coordinate triples. Duplicates are summed in the
    /// semiring and zero results dropped.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self, SparseError> {
        let mut entries: Vec<(usize, usize, S)> = Vec::new();
        for (row, col, v) in triples {
            if row >= rows || col >= cols {
                return Err(SparseError::IndexOutOfRange {
                    row,
                    col,
                    rows,
                    cols,
                });
            }
            entries.push((row, col, v));
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));

        let mut merged: Vec<(usize, usize, S)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (r, c) => last.2 = last.2.add(v),
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| !e.2.is_zero());

        let mut row_ptr = vec![0; rows + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        let (col_idx, values) = merged.into_iter().map(|(_, c, v)| (c, v)).unzip();
        Ok(Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Assembles a matrix from raw CSR arrays. Caller guarantees sorted,
    /// in-range, nonzero entries.
    pub(crate) fn from_csr_unchecked(
        rows: usize,
        cols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<S>,
    ) -> Self {
        let m = Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        };
        debug_assert!(m.check_invariants(), "malformed CSR data");
        m
    }

    pub(crate) fn check_invariants(&self) -> bool {
        self.row_ptr.len() == self.rows + 1
            && self.row_ptr[0] == 0
            && self.row_ptr[self.rows] == self.col_idx.len()
            && self.col_idx.len() == self.values.len()
            && (0..self.rows).all(|r| {
                let (cols, vals) = self.row(r);
                cols.windows(2).all(|w| w[0] < w[1])
                    && cols.iter().all(|&c| c < self.cols)
                    && vals.iter().all(|v| !v.is_zero())
            })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Column indices and values stored in row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> (&[usize], &[S]) {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[span.clone()], &self.values[span])
    }

    pub fn row_nnz(&self, i: usize) -> usize {
        self.row_ptr[i + 1] - self.row_ptr[i]
    }

    /// Number of stored entries per column.
    pub fn col_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.cols];
        for &c in &self.col_idx {
            counts[c] += 1;
        }
        counts
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => S::ZERO,
        }
    }

    /// All entries as `(row, col, value)`, row-major.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, S)> + '_ {
        (0..self.rows).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn to_triples(&self) -> Vec<(usize, usize, S)> {
        self.iter().collect()
    }

    pub fn map<T: Semiring>(&self, f: impl Fn(S) -> T) -> SparseMat<T> {
        SparseMat::from_triples(
            self.rows,
            self.cols,
            self.iter().map(|(r, c, v)| (r, c, f(v))),
        )
        .expect("indices unchanged")
    }

    /// Transpose by counting sort; the result's rows come out sorted.
    pub fn transpose(&self) -> Self {
        let mut row_ptr = vec![0; self.cols + 1];
        for &c in &self.col_idx {
            row_ptr[c + 1] += 1;
        }
        for c in 0..self.cols {
            row_ptr[c + 1] += row_ptr[c];
        }
        let mut next = row_ptr.clone();
        let mut col_idx = vec![0; self.nnz()];
        let mut values = vec![S::ZERO; self.nnz()];
        for r in 0..self.rows {
            let (cols, vals) = self.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                let slot = next[c];
                next[c] += 1;
                col_idx[slot] = r;
                values[slot] = v;
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// Semiring product `self * other` by Gustavson's row-merge scheme: a
    /// dense accumulator indexed by column, reset only where it was touched.
    /// Cost is proportional to the row count, the stored entries, and the
    /// number of nontrivial scalar products.
    pub fn matmul(&self, other: &Self) -> Result<Self, SparseError> {
        if self.cols != other.rows {
            return Err(SparseError::DimensionMismatch {
                left_cols: self.cols,
                right_rows: other.rows,
            });
        }
        let mut acc = vec![S::ZERO; other.cols];
        let mut occupied = vec![false; other.cols];
        let mut touched: Vec<usize> = Vec::new();

        let mut row_ptr = Vec::with_capacity(self.rows + 1);
        row_ptr.push(0);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();

        for i in 0..self.rows {
            let (a_cols, a_vals) = self.row(i);
            for (&k, &a) in a_cols.iter().zip(a_vals) {
                let (b_cols, b_vals) = other.row(k);
                for (&j, &b) in b_cols.iter().zip(b_vals) {
                    if !occupied[j] {
                        occupied[j] = true;
                        touched.push(j);
                    }
                    acc[j] = acc[j].add(a.mul(b));
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                let v = std::mem::replace(&mut acc[j], S::ZERO);
                occupied[j] = false;
                if !v.is_zero() {
                    col_idx.push(j);
                    values.push(v);
                }
            }
            touched.clear();
            row_ptr.push(col_idx.len());
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let offset = self.cols;
        let base = self.nnz();
        let mut row_ptr = Vec::with_capacity(self.rows + other.rows + 1);
        row_ptr.extend_from_slice(&self.row_ptr);
        row_ptr.extend(other.row_ptr[1..].iter().map(|&p| p + base));
        let mut col_idx = Vec::with_capacity(self.nnz() + other.nnz());
        col_idx.extend_from_slice(&self.col_idx);
        col_idx.extend(other.col_idx.iter().map(|&c| c + offset));
        let mut values = Vec::with_capacity(self.nnz() + other.nnz());
        values.extend_from_slice(&self.values);
        values.extend_from_slice(&other.values);
        Self {
            rows: self.rows + other.rows,
            cols: self.cols + other.cols,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// Reorders rows and columns: `result[i][j] = self[rowp[i]][colp[j]]`,
    /// i.e. `Rp^T * self * Cp`.
    ///
    /// Two counting-sort passes in the manner of a halfperm: scatter the
    /// permuted rows into columns (relabelling column indices), then gather
    /// back into rows. Both passes emit indices in increasing order, so the
    /// result is sorted without a comparison sort. `O(nnz + rows + cols)`.
    pub fn apply_perm(&self, rowp: &Perm, colp: &Perm) -> Result<Self, SparseError> {
        if rowp.len() != self.rows {
            return Err(SparseError::PermSize {
                perm: rowp.len(),
                dim: self.rows,
            });
        }
        if colp.len() != self.cols {
            return Err(SparseError::PermSize {
                perm: colp.len(),
                dim: self.cols,
            });
        }
        let col_new = colp.inverse();
        let nnz = self.nnz();

        // pass 1: column-major buffer of the permuted matrix
        let mut col_ptr = vec![0; self.cols + 1];
        for &c in &self.col_idx {
            col_ptr[col_new[c] + 1] += 1;
        }
        for c in 0..self.cols {
            col_ptr[c + 1] += col_ptr[c];
        }
        let mut next = col_ptr.clone();
        let mut t_rows = vec![0; nnz];
        let mut t_vals = vec![S::ZERO; nnz];
        for i in 0..self.rows {
            let (cols, vals) = self.row(rowp[i]);
            for (&c, &v) in cols.iter().zip(vals) {
                let j = col_new[c];
                let slot = next[j];
                next[j] += 1;
                t_rows[slot] = i;
                t_vals[slot] = v;
            }
        }

        // pass 2: back to rows
        let mut row_ptr = vec![0; self.rows + 1];
        for i in 0..self.rows {
            row_ptr[i + 1] = row_ptr[i] + self.row_nnz(rowp[i]);
        }
        let mut next = row_ptr.clone();
        let mut col_idx = vec![0; nnz];
        let mut values = vec![S::ZERO; nnz];
        for j in 0..self.cols {
            for slot in col_ptr[j]..col_ptr[j + 1] {
                let i = t_rows[slot];
                let out = next[i];
                next[i] += 1;
                col_idx[out] = j;
                values[out] = t_vals[slot];
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Whether the graph with an edge `j -> i` per entry `(i, j)` has no
    /// directed cycle. Kahn's algorithm, `O(K + nnz)`.
    pub fn is_acyclic(&self) -> Result<bool, SparseError> {
        Ok(self.topological_order()?.is_some())
    }

    /// A topological order of the nodes (sources before targets), or `None`
    /// if there is a cycle. Ties are broken by smallest index first.
    pub fn topological_order(&self) -> Result<Option<Vec<usize>>, SparseError> {
        if !self.is_square() {
            return Err(SparseError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut indegree: Vec<usize> = (0..n).map(|i| self.row_nnz(i)).collect();
        let out = self.transpose();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(j) = queue.pop_front() {
            order.push(j);
            for &i in out.row(j).0 {
                indegree[i] -= 1;
                if indegree[i] == 0 {
                    queue.push_back(i);
                }
            }
        }
        Ok((order.len() == n).then_some(order))
    }
}

impl<S: Semiring> fmt::Debug for SparseMat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMat({}x{}, ", self.rows, self.cols)?;
        f.debug_list().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}
