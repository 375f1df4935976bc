use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("index {index} out of range for dimension {n}")]
    Index { index: usize, n: usize },

    #[error("matrix is not Hermitian: max |A[i][j] - conj(A[j][i])| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("eigensolver did not converge within {iterations} iterations")]
    Convergence { iterations: usize },

    #[error("vector is not unit length: norm = {norm}")]
    NotUnit { norm: f64 },

    #[error("columns are not orthonormal: max |C*C - I| = {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate spectrum: eigenvalue gap {gap:e} below threshold {threshold:e} (rows {rows:?})")]
    Degenerate { rows: Vec<usize>, gap: f64, threshold: f64 },

    #[error("infeasible targets: interlacing violated at target index {index}")]
    Infeasible { index: usize },

    #[error("row {row}: {source}")]
    AtRow {
        row: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_row(self, row: usize) -> Self {
        Error::AtRow {
            row,
            source: Box::new(self),
        }
    }

    /// Innermost error, with any row context peeled off.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtRow { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.root(), Error::Degenerate { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self.root(), Error::Infeasible { .. })
    }
}
