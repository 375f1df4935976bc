//! Eigenvector element magnitudes from eigenvalues alone.
//!
//! For a Hermitian `A` with ascending eigenvalues `w` and unit eigenvectors
//! `q_i`, and `x_j1 <= ... <= x_j,n-1` the eigenvalues of the principal minor
//! with row and column `j` deleted,
//!
//! ```text
//! |q_i[j]|^2 = prod_k (w_i - x_jk) / prod_{k != i} (w_i - w_k)
//! ```
//!
//! The minor eigenvalues sit in the numerator. Writing the ratio the other
//! way up gives 2 instead of 1/2 for `[[0, 1], [1, 0]]`.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::magnitudes::{MinorSpectra, Provenance, SquaredMagnitudes};
use crate::scalar::Real;
use crate::spectral::{degeneracy_threshold, eigendecompose, eigenvalues};
use crate::tolerance;

/// Deletes row `j` and column `j`.
pub fn minor<T: Real>(a: &HermitianMatrix<T>, j: usize) -> Result<HermitianMatrix<T>> {
    let n = a.dim();
    if n < 2 {
        return Err(Error::Dimension("a 1x1 matrix has an empty minor".into()));
    }
    if j >= n {
        return Err(Error::Index { index: j, n });
    }
    let m = a.as_matrix().clone().remove_row(j).remove_column(j);
    // principal submatrix of a Hermitian matrix is Hermitian entry-for-entry
    HermitianMatrix::with_tolerance(m, T::zero())
}

/// Ascending eigenvalues of every principal minor, one eigensolve per row.
pub fn minor_spectra<T: Real>(a: &HermitianMatrix<T>) -> Result<MinorSpectra<T>> {
    let n = a.dim();
    if n < 2 {
        return Err(Error::Dimension("minor spectra need n >= 2".into()));
    }
    let rows = (0..n)
        .into_par_iter()
        .map(|j| minor(a, j).and_then(|m| eigenvalues(&m)).map_err(|e| e.at_row(j)))
        .collect::<Result<Vec<_>>>()?;
    MinorSpectra::from_rows(rows, Provenance::MinorDeletion)
}

/// `prod_k (w_i - x_k) / prod_{k != i} (w_i - w_k)`.
///
/// Numerator and denominator factors are paired in ascending order, so each
/// partial ratio lies in `[0, 1]` whenever `x` interlaces `w`. The running
/// product can then only shrink, which rules out overflow at any size.
pub(crate) fn gap_ratio<T: Real>(w: &[T], i: usize, x: &[T]) -> T {
    let wi = w[i];
    let others = w.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &wk)| wk);
    x.iter()
        .zip(others)
        .fold(T::one(), |acc, (&xk, wk)| acc * ((wi - xk) / (wi - wk)))
}

/// Rows `i` of `w` whose nearest neighbour is closer than the degeneracy threshold.
pub(crate) fn degenerate_rows<T: Real>(w: &[T]) -> Vec<bool> {
    let threshold = degeneracy_threshold(w);
    (0..w.len())
        .map(|i| {
            let left = i > 0 && (w[i] - w[i - 1]).abs() < threshold;
            let right = i + 1 < w.len() && (w[i + 1] - w[i]).abs() < threshold;
            left || right
        })
        .collect()
}

pub(crate) fn ensure_ascending<T: Real>(v: &[T], what: &str) -> Result<()> {
    if v.windows(2).any(|p| !(p[0] <= p[1])) {
        return Err(Error::InvalidInput(format!("{what} must be finite and ascending")));
    }
    Ok(())
}

fn clamp_unit<T: Real>(v: T) -> T {
    let tol = T::tol(tolerance::MAGNITUDE_CLAMP);
    if v < T::zero() && v >= -tol {
        T::zero()
    } else if v > T::one() && v <= T::one() + tol {
        T::one()
    } else {
        v
    }
}

/// Applies the identity to precomputed spectra.
///
/// `w` must be ascending with one entry per row of `x`. Rows `i` whose
/// eigenvalue is not separated from its neighbours are flagged invalid and
/// carry zeros. Roundoff just outside `[0, 1]` is clamped; anything further
/// out is kept as computed so comparisons see it.
pub fn squared_magnitudes_from_spectra<T: Real>(w: &[T], x: &MinorSpectra<T>) -> Result<SquaredMagnitudes<T>> {
    let n = w.len();
    if x.rows() != n || x.cols() + 1 != n {
        return Err(Error::Dimension(format!(
            "{} eigenvalues but spectra table is {}x{}",
            n,
            x.rows(),
            x.cols()
        )));
    }
    ensure_ascending(w, "eigenvalues")?;
    let degenerate = degenerate_rows(w);
    let mut values = DMatrix::zeros(n, n);
    let mut valid = DMatrix::from_element(n, n, true);
    for j in 0..n {
        let xj = x.row(j);
        for i in 0..n {
            if degenerate[i] {
                valid[(i, j)] = false;
            } else {
                values[(i, j)] = clamp_unit(gap_ratio(w, i, &xj));
            }
        }
    }
    SquaredMagnitudes::new(values, valid)
}

/// `R[i][j] ≈ |q_i[j]|^2` from the eigenvalues of `A` and of its minors.
pub fn eigenvector_magnitudes<T: Real>(a: &HermitianMatrix<T>) -> Result<SquaredMagnitudes<T>> {
    let decomp = eigendecompose(a)?;
    let x = minor_spectra(a)?;
    squared_magnitudes_from_spectra(decomp.eigenvalues().as_slice(), &x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> HermitianMatrix<f64> {
        HermitianMatrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn minor_of_2x2() {
        let a = real(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert_eq!(minor(&a, 0).unwrap().get(0, 0).re, 4.0);
        assert_eq!(minor(&a, 1).unwrap().get(0, 0).re, 1.0);
    }

    #[test]
    fn minor_errors() {
        let a = real(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert_eq!(minor(&a, 2).unwrap_err(), Error::Index { index: 2, n: 2 });
        let one = real(&[&[1.0]]);
        assert!(matches!(minor(&one, 0), Err(Error::Dimension(_))));
        assert!(matches!(minor_spectra(&one), Err(Error::Dimension(_))));
    }

    #[test]
    fn diagonal_minor_spectra() {
        let a = HermitianMatrix::from_real_diagonal(&[2.0, 5.0]);
        let x = minor_spectra(&a).unwrap();
        assert_eq!(x.row(0), vec![5.0]);
        assert_eq!(x.row(1), vec![2.0]);
        assert_eq!(x.provenance(), Provenance::MinorDeletion);
    }

    #[test]
    fn swap_minor_spectra_are_zero() {
        let a = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let x = minor_spectra(&a).unwrap();
        assert_eq!(x.row(0), vec![0.0]);
        assert_eq!(x.row(1), vec![0.0]);
    }

    #[test]
    fn diagonal_gives_identity_magnitudes() {
        let x = MinorSpectra::from_rows(vec![vec![5.0], vec![2.0]], Provenance::MinorDeletion).unwrap();
        let r = squared_magnitudes_from_spectra(&[2.0, 5.0], &x).unwrap();
        assert_eq!(r.values(), &DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]));
    }

    #[test]
    fn swap_gives_halves() {
        let x = MinorSpectra::from_rows(vec![vec![0.0], vec![0.0]], Provenance::MinorDeletion).unwrap();
        let r = squared_magnitudes_from_spectra(&[-1.0, 1.0], &x).unwrap();
        assert_eq!(r.values(), &DMatrix::from_element(2, 2, 0.5));
        let r = eigenvector_magnitudes(&real(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert!(r.values().iter().all(|&v| (v - 0.5).abs() < 1e-15));
    }

    #[test]
    fn shape_mismatch() {
        let x = MinorSpectra::from_rows(vec![vec![0.0], vec![0.0]], Provenance::MinorDeletion).unwrap();
        assert!(matches!(
            squared_magnitudes_from_spectra(&[0.0, 1.0, 2.0], &x),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            squared_magnitudes_from_spectra(&[1.0, 0.0], &x),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn identity_matrix_is_fully_flagged() {
        let a = HermitianMatrix::<f64>::identity(2);
        let r = eigenvector_magnitudes(&a).unwrap();
        assert!((0..2).all(|i| (0..2).all(|j| !r.is_valid(i, j))));
        assert!(r.values().iter().all(|v| v.is_finite()));
        assert!(r.ensure_valid(&[1.0, 1.0]).unwrap_err().is_degenerate());
    }

    #[test]
    fn gap_ratio_matches_direct_product() {
        let w = [-3.0, -1.0, 0.5, 2.0];
        let x = [-2.0, 0.0, 1.0];
        for i in 0..4 {
            let num: f64 = x.iter().map(|xk| w[i] - xk).product();
            let den: f64 = (0..4).filter(|&k| k != i).map(|k| w[i] - w[k]).product();
            assert!((gap_ratio(&w, i, &x) - num / den).abs() < 1e-15);
        }
    }

    #[test]
    fn single_precision_path() {
        let a =
            HermitianMatrix::<f32>::from_real_rows(&[vec![2.0, 1.0, 0.0], vec![1.0, 3.0, 1.0], vec![0.0, 1.0, 4.0]])
                .unwrap();
        let r = eigenvector_magnitudes(&a).unwrap();
        let d = eigendecompose(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((r.get(i, j) - d.eigenvectors()[(j, i)].norm_sqr()).abs() < 1e-4);
            }
        }
    }
}
