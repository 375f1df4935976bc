//! Hermitian eigendecomposition with a fixed ordering and phase convention.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::ComplexField;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::scalar::{creal, Real, C};
use crate::tolerance;

/// Eigenvalues `w` (ascending) and unitary eigenvectors `Q` (columns) of a
/// Hermitian matrix, so that `A = Q diag(w) Q*`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<T: Real> {
    eigenvalues: DVector<T>,
    eigenvectors: DMatrix<C<T>>,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn eigenvalues(&self) -> &DVector<T> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<C<T>> {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `max |(A Q - Q diag(w))[i][j]|`.
    pub fn residual(&self, a: &HermitianMatrix<T>) -> T {
        let aq = a.as_matrix() * &self.eigenvectors;
        let mut qw = self.eigenvectors.clone();
        for (k, mut col) in qw.column_iter_mut().enumerate() {
            col *= creal(self.eigenvalues[k]);
        }
        (aq - qw).iter().fold(T::zero(), |m, z| m.max(z.modulus()))
    }

    /// `max |(Q* Q - I)[i][j]|`.
    pub fn orthonormality_error(&self) -> T {
        let n = self.dim();
        let g = self.eigenvectors.adjoint() * &self.eigenvectors;
        (g - DMatrix::<C<T>>::identity(n, n))
            .iter()
            .fold(T::zero(), |m, z| m.max(z.modulus()))
    }

    /// Smallest gap between consecutive eigenvalues; `None` for n = 1.
    pub fn min_gap(&self) -> Option<T> {
        min_gap(self.eigenvalues.as_slice())
    }

    /// Threshold below which eigenvalue gaps count as repeated.
    pub fn degeneracy_threshold(&self) -> T {
        degeneracy_threshold(self.eigenvalues.as_slice())
    }
}

pub(crate) fn min_gap<T: Real>(w: &[T]) -> Option<T> {
    w.windows(2).map(|p| (p[1] - p[0]).abs()).reduce(|a, b| a.min(b))
}

/// `1e-8 * (w_max - w_min + 1)` for ascending `w`.
pub fn degeneracy_threshold<T: Real>(w: &[T]) -> T {
    T::tol(tolerance::DEGENERACY_REL) * (spread(w) + T::one())
}

/// `w_max - w_min` for ascending `w`.
pub fn spread<T: Real>(w: &[T]) -> T {
    match (w.first(), w.last()) {
        (Some(&lo), Some(&hi)) => hi - lo,
        _ => T::zero(),
    }
}

fn iteration_budget(n: usize) -> usize {
    64 * n.max(8)
}

fn solve<T: Real>(m: DMatrix<C<T>>) -> Result<SymmetricEigen<C<T>, nalgebra::Dyn>> {
    let budget = iteration_budget(m.nrows());
    SymmetricEigen::try_new(m, T::default_epsilon(), budget).ok_or(Error::Convergence { iterations: budget })
}

fn ascending_order<T: Real>(w: &DVector<T>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by(|&a, &b| {
        w[a].partial_cmp(&w[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    order
}

/// Eigendecomposition with ascending eigenvalues. Each eigenvector column is
/// scaled so its largest-magnitude element (lowest index on ties) is real
/// and positive, making the output a deterministic function of the input.
pub fn eigendecompose<T: Real>(a: &HermitianMatrix<T>) -> Result<SpectralDecomposition<T>> {
    let eig = solve(a.as_matrix().clone())?;
    let order = ascending_order(&eig.eigenvalues);
    let n = order.len();
    let eigenvalues = DVector::from_fn(n, |k, _| eig.eigenvalues[order[k]]);
    let mut eigenvectors = DMatrix::from_fn(n, n, |i, k| eig.eigenvectors[(i, order[k])]);

    for mut col in eigenvectors.column_iter_mut() {
        let mut pivot = 0;
        let mut best = T::zero();
        for (i, z) in col.iter().enumerate() {
            let m = z.modulus();
            if m > best {
                best = m;
                pivot = i;
            }
        }
        if best > T::zero() {
            let phase = col[pivot].conj().unscale(best);
            col *= phase;
            col[pivot] = creal(col[pivot].re);
        }
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Ascending eigenvalues only.
///
/// Skips eigenvector accumulation, which is most of the cost of a solve.
/// nalgebra exposes this path without an iteration cap; inputs are finite by
/// construction of [`HermitianMatrix`], and implicit QR on a finite Hermitian
/// tridiagonal always deflates.
pub fn eigenvalues<T: Real>(a: &HermitianMatrix<T>) -> Result<Vec<T>> {
    let mut w: Vec<T> = a.as_matrix().symmetric_eigenvalues().iter().copied().collect();
    w.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(w)
}
