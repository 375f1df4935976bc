//! Dense Hermitian matrices and the hermiticity check.

use nalgebra::ComplexField;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::{creal, Real, C};
use crate::tolerance;

/// Largest `|A[i][j] - conj(A[j][i])|` over all index pairs.
fn hermitian_deviation<T: Real>(m: &DMatrix<C<T>>) -> T {
    let n = m.nrows();
    let mut worst = T::zero();
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).modulus();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

fn ensure_square<T: Real>(m: &DMatrix<C<T>>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() == 0 {
        return Err(Error::Dimension("matrix is empty".into()));
    }
    Ok(())
}

/// True iff `max |A[i][j] - conj(A[j][i])| <= tol`.
pub fn validate_hermitian<T: Real>(m: &DMatrix<C<T>>, tol: T) -> Result<bool> {
    ensure_square(m)?;
    Ok(hermitian_deviation(m) <= tol)
}

/// Largest entry modulus, `‖A‖_max`.
pub(crate) fn max_abs<T: Real>(m: &DMatrix<C<T>>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(z.modulus()))
}

/// A dense complex Hermitian matrix. Real symmetric input is the special
/// case with zero imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T: Real> {
    entries: DMatrix<C<T>>,
}

impl<T: Real> HermitianMatrix<T> {
    /// Accepts `m` if it is Hermitian to within `1e-12 * ‖m‖_max`.
    pub fn new(m: DMatrix<C<T>>) -> Result<Self> {
        ensure_square(&m)?;
        let tol = T::tol(tolerance::HERMITIAN_REL) * max_abs(&m);
        Self::with_tolerance(m, tol)
    }

    /// Accepts `m` if it is Hermitian to within the absolute `tol`.
    pub fn with_tolerance(m: DMatrix<C<T>>, tol: T) -> Result<Self> {
        ensure_square(&m)?;
        if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        let deviation = hermitian_deviation(&m);
        if !(deviation <= tol) {
            return Err(Error::NotHermitian {
                deviation: deviation.as_f64(),
                tol: tol.as_f64(),
            });
        }
        Ok(HermitianMatrix { entries: m })
    }

    /// Replaces `m` by `(m + m*) / 2`. Only for callers that asked for it.
    pub fn symmetrized(m: DMatrix<C<T>>) -> Result<Self> {
        ensure_square(&m)?;
        let sym = Self::hermitian_part(&m).into_matrix();
        Self::with_tolerance(sym, T::zero())
    }

    pub fn from_real(m: DMatrix<T>) -> Result<Self> {
        Self::new(m.map(creal))
    }

    /// Builds from row-major nested rows of complex entries.
    pub fn from_rows(rows: &[Vec<C<T>>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows have inconsistent lengths".into()));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn from_real_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows have inconsistent lengths".into()));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| creal(rows[i][j])))
    }

    /// Panics if an entry is not finite.
    pub fn from_real_diagonal(diag: &[T]) -> Self {
        assert!(diag.iter().all(|d| d.is_finite()), "diagonal entries must be finite");
        let n = diag.len();
        HermitianMatrix {
            entries: DMatrix::from_fn(n, n, |i, j| if i == j { creal(diag[i]) } else { creal(T::zero()) }),
        }
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix {
            entries: DMatrix::identity(n, n),
        }
    }

    /// Hermitian part of a product the caller knows is Hermitian in exact
    /// arithmetic; removes rounding asymmetry before an eigensolve.
    pub(crate) fn hermitian_part(m: &DMatrix<C<T>>) -> Self {
        let half = T::lit(0.5);
        let sym = (m + m.adjoint()).map(|z| z * half);
        HermitianMatrix { entries: sym }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<C<T>> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<C<T>> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> C<T> {
        self.entries[(i, j)]
    }

    pub fn max_abs(&self) -> T {
        max_abs(&self.entries)
    }

    /// True when every entry has an exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == T::zero())
    }

    /// `P A P*` for a permutation `perm` with `perm[new] = old`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.dim();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidInput("not a permutation".into()));
        }
        Ok(HermitianMatrix {
            entries: DMatrix::from_fn(n, n, |i, j| self.entries[(perm[i], perm[j])]),
        })
    }
}
