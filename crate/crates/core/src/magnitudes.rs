//! Tables shared by the identity and projection routines: the eigenvalues of
//! each deflated matrix, and the squared-magnitude matrix built from them.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// How the rows of a [`MinorSpectra`] table were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Eigenvalues of the principal minor with row and column `j` deleted.
    MinorDeletion,
    /// Eigenvalues of `P_j A P_j` with the smallest-magnitude one dropped.
    ProjectionDeflation,
    /// Eigenvalues of `B_j* A B_j`, `B_j` an orthonormal basis of `c_j`'s complement.
    SubspaceRestriction,
}

/// `n × (n-1)` table whose row `j` holds the ascending eigenvalues of the
/// `j`-th deflated matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorSpectra<T: Real> {
    values: DMatrix<T>,
    provenance: Provenance,
    ambiguous_rows: Vec<usize>,
}

impl<T: Real> MinorSpectra<T> {
    /// Builds the table from `n` rows of length `n - 1`; each row is sorted.
    pub fn from_rows(rows: Vec<Vec<T>>, provenance: Provenance) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::Dimension(format!("need at least 2 rows, got {n}")));
        }
        if let Some((j, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n - 1) {
            return Err(Error::Dimension(format!(
                "row {j} has {} values, expected {}",
                r.len(),
                n - 1
            )));
        }
        let mut values = DMatrix::zeros(n, n - 1);
        for (j, mut row) in rows.into_iter().enumerate() {
            row.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
            for (k, v) in row.into_iter().enumerate() {
                values[(j, k)] = v;
            }
        }
        Ok(MinorSpectra {
            values,
            provenance,
            ambiguous_rows: Vec::new(),
        })
    }

    pub(crate) fn with_ambiguous_rows(mut self, rows: Vec<usize>) -> Self {
        self.ambiguous_rows = rows;
        self
    }

    pub fn rows(&self) -> usize {
        self.values.nrows()
    }

    pub fn cols(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> &DMatrix<T> {
        &self.values
    }

    pub fn row(&self, j: usize) -> Vec<T> {
        self.values.row(j).iter().copied().collect()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Rows where the smallest-|λ| drop could not tell the projector's zero
    /// apart from an eigenvalue of the matrix.
    pub fn ambiguous_rows(&self) -> &[usize] {
        &self.ambiguous_rows
    }

    /// Checks `w_k - tol <= x_jk <= w_{k+1} + tol` for every row.
    pub fn check_interlacing(&self, w: &[T], tol: T) -> Result<()> {
        if w.len() != self.rows() {
            return Err(Error::Dimension(format!(
                "{} eigenvalues for a table with {} rows",
                w.len(),
                self.rows()
            )));
        }
        for j in 0..self.rows() {
            if let Some(k) = interlacing_violation(w, &self.row(j), tol) {
                return Err(Error::Infeasible { index: k }.at_row(j));
            }
        }
        Ok(())
    }

    /// Largest elementwise difference to another table of the same shape.
    pub fn max_abs_diff(&self, other: &MinorSpectra<T>) -> Result<T> {
        if self.values.shape() != other.values.shape() {
            return Err(Error::Dimension("spectra tables differ in shape".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs())))
    }
}

/// First `k` with `x_k` outside `[w_k - tol, w_{k+1} + tol]`.
pub(crate) fn interlacing_violation<T: Real>(w: &[T], x: &[T], tol: T) -> Option<usize> {
    x.iter()
        .enumerate()
        .find(|&(k, &xk)| xk < w[k] - tol || xk > w[k + 1] + tol)
        .map(|(k, _)| k)
}

/// `n × n` matrix `R` with `R[i][j]` the squared overlap of eigenvector `i`
/// with basis vector `j`. Rows index eigenvalues, columns index basis
/// elements. Entries whose eigenvalue sits in a degenerate cluster are
/// flagged invalid rather than poisoned.
#[derive(Debug, Clone, PartialEq)]
pub struct SquaredMagnitudes<T: Real> {
    values: DMatrix<T>,
    valid: DMatrix<bool>,
}

impl<T: Real> SquaredMagnitudes<T> {
    pub fn new(values: DMatrix<T>, valid: DMatrix<bool>) -> Result<Self> {
        if values.shape() != valid.shape() || values.nrows() != values.ncols() {
            return Err(Error::Dimension(
                "magnitude table must be square with matching flags".into(),
            ));
        }
        Ok(SquaredMagnitudes { values, valid })
    }

    pub fn fully_valid(values: DMatrix<T>) -> Self {
        let (r, c) = values.shape();
        SquaredMagnitudes {
            values,
            valid: DMatrix::from_element(r, c, true),
        }
    }

    pub fn dim(&self) -> usize {
        self.values.nrows()
    }

    pub fn values(&self) -> &DMatrix<T> {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[(i, j)]
    }

    pub fn is_valid(&self, i: usize, j: usize) -> bool {
        self.valid[(i, j)]
    }

    pub fn is_fully_valid(&self) -> bool {
        self.valid.iter().all(|&v| v)
    }

    /// Rows (eigenvalue indices) carrying at least one invalid entry.
    pub fn invalid_rows(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.valid.row(i).iter().any(|&v| !v))
            .collect()
    }

    /// Errors with [`Error::Degenerate`] unless every entry is valid.
    pub fn ensure_valid(&self, w: &[T]) -> Result<&Self> {
        if self.is_fully_valid() {
            return Ok(self);
        }
        Err(Error::Degenerate {
            rows: self.invalid_rows(),
            gap: crate::spectral::min_gap(w).map_or(f64::NAN, Real::as_f64),
            threshold: crate::spectral::degeneracy_threshold(w).as_f64(),
        })
    }

    pub fn row_sums(&self) -> Vec<T> {
        self.values.row_iter().map(|r| r.sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<T> {
        self.values.column_iter().map(|c| c.sum()).collect()
    }

    /// `max |sum - 1|` over all row and column sums.
    pub fn stochasticity_error(&self) -> T {
        self.row_sums()
            .into_iter()
            .chain(self.column_sums())
            .fold(T::zero(), |m, s| m.max((s - T::one()).abs()))
    }

    /// Largest `|R[i][j] - other[i][j]|` over entries valid in `self`.
    pub fn max_abs_diff(&self, reference: &SquaredMagnitudes<T>) -> Result<T> {
        if self.values.shape() != reference.values.shape() {
            return Err(Error::Dimension(format!(
                "magnitude tables differ in shape: {:?} vs {:?}",
                self.values.shape(),
                reference.values.shape()
            )));
        }
        let mut worst = T::zero();
        for ((a, b), &ok) in self.values.iter().zip(reference.values.iter()).zip(self.valid.iter()) {
            if ok {
                worst = worst.max((*a - *b).abs());
            }
        }
        Ok(worst)
    }
}
