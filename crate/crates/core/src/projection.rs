//! Rank-one deflation by `P = I - c c*` and its generalization to the
//! columns of an arbitrary orthonormal basis.
//!
//! Projecting out `c` leaves `P A P` with one artificial zero eigenvalue.
//! Two ways to get rid of it are offered:
//!
//! * [`DeflationMode::Restriction`] represents `P A P` on an orthonormal basis
//!   `B` of `c`'s complement and diagonalizes the `(n-1) × (n-1)` matrix
//!   `B* A B`. There is no zero to remove.
//! * [`DeflationMode::PaperDropSmallest`] diagonalizes the full `P A P` and
//!   discards the eigenvalue of smallest magnitude. This picks the wrong
//!   eigenvalue whenever `A` itself has an eigenvalue nearer zero than the
//!   roundoff-level projector zero; such rows are reported as ambiguous.

use nalgebra::ComplexField;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::identity::squared_magnitudes_from_spectra;
use crate::magnitudes::{MinorSpectra, Provenance, SquaredMagnitudes};
use crate::scalar::{creal, Real, C};
use crate::spectral::{eigendecompose, eigenvalues};
use crate::tolerance;

/// A complex vector with `c* c = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector<T: Real> {
    entries: DVector<C<T>>,
}

impl<T: Real> UnitVector<T> {
    pub fn new(entries: DVector<C<T>>) -> Result<Self> {
        Self::with_tolerance(entries, T::tol(tolerance::UNIT_NORM))
    }

    pub fn with_tolerance(entries: DVector<C<T>>, tol: T) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Dimension("unit vector must be non-empty".into()));
        }
        let norm_sqr = entries.norm_squared();
        if !((norm_sqr - T::one()).abs() <= tol) {
            return Err(Error::NotUnit {
                norm: norm_sqr.sqrt().as_f64(),
            });
        }
        Ok(UnitVector { entries })
    }

    /// Scales a nonzero vector to unit length.
    pub fn normalize(entries: DVector<C<T>>) -> Result<Self> {
        let norm = entries.norm();
        if entries.is_empty() || !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::NotUnit { norm: norm.as_f64() });
        }
        Ok(UnitVector {
            entries: entries.unscale(norm),
        })
    }

    pub fn from_real(entries: &[T]) -> Result<Self> {
        Self::new(DVector::from_iterator(entries.len(), entries.iter().map(|&x| creal(x))))
    }

    /// Standard basis vector `e_j` of length `n`.
    pub fn standard(n: usize, j: usize) -> Result<Self> {
        if j >= n {
            return Err(Error::Index { index: j, n });
        }
        let mut e = DVector::zeros(n);
        e[j] = creal(T::one());
        Ok(UnitVector { entries: e })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_vector(&self) -> &DVector<C<T>> {
        &self.entries
    }

    pub fn into_vector(self) -> DVector<C<T>> {
        self.entries
    }
}

/// Square matrix whose columns `c_j` are orthonormal, `C* C = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis<T: Real> {
    columns: DMatrix<C<T>>,
}

impl<T: Real> OrthonormalBasis<T> {
    pub fn new(columns: DMatrix<C<T>>) -> Result<Self> {
        let n = columns.nrows();
        if n == 0 || columns.ncols() != n {
            return Err(Error::Dimension(format!(
                "basis must be square and non-empty, got {}x{}",
                n,
                columns.ncols()
            )));
        }
        let deviation = (columns.adjoint() * &columns - DMatrix::<C<T>>::identity(n, n))
            .iter()
            .fold(T::zero(), |m, z| m.max(z.modulus()));
        if !(deviation <= T::tol(tolerance::ORTHONORMAL)) {
            return Err(Error::NotOrthonormal {
                deviation: deviation.as_f64(),
            });
        }
        Ok(OrthonormalBasis { columns })
    }

    pub fn from_real(columns: DMatrix<T>) -> Result<Self> {
        Self::new(columns.map(creal))
    }

    pub fn identity(n: usize) -> Self {
        OrthonormalBasis {
            columns: DMatrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.columns.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<C<T>> {
        &self.columns
    }

    /// Column `c_j`.
    pub fn column(&self, j: usize) -> Result<UnitVector<T>> {
        if j >= self.dim() {
            return Err(Error::Index {
                index: j,
                n: self.dim(),
            });
        }
        Ok(UnitVector {
            entries: self.columns.column(j).into_owned(),
        })
    }
}

/// Which route removes the projector's artificial zero eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeflationMode {
    /// Eigenvalues of `B* A B` on the orthogonal complement of `c`.
    #[default]
    Restriction,
    /// Eigenvalues of `P A P` minus the one smallest in magnitude.
    PaperDropSmallest,
}

impl DeflationMode {
    pub fn provenance(self) -> Provenance {
        match self {
            DeflationMode::Restriction => Provenance::SubspaceRestriction,
            DeflationMode::PaperDropSmallest => Provenance::ProjectionDeflation,
        }
    }
}

/// `P = I - c c*`.
pub fn projector<T: Real>(c: &UnitVector<T>) -> HermitianMatrix<T> {
    let n = c.dim();
    let v = c.as_vector();
    let p = DMatrix::<C<T>>::identity(n, n) - v * v.adjoint();
    HermitianMatrix::hermitian_part(&p)
}

/// Orthonormal basis of the complement of `c`, as the `n × (n-1)` matrix
/// `B` with `B* B = I` and `B* c = 0`.
///
/// Uses the Householder reflector `H = I - 2 v v* / (v* v)` with
/// `v = c + e^{iθ} e_1`, `θ = arg c_1`, which maps `c` to `-e^{iθ} e_1`.
/// Adding (rather than subtracting) the phase-aligned `e_1` keeps `v* v >= 2`
/// with no cancellation. Columns 2..n of `H` are the result.
pub fn complement_basis<T: Real>(c: &UnitVector<T>) -> DMatrix<C<T>> {
    let n = c.dim();
    let mut v = c.as_vector().clone();
    let c0 = v[0];
    let m0 = c0.modulus();
    let phase = if m0 > T::zero() {
        c0.unscale(m0)
    } else {
        creal(T::one())
    };
    v[0] += phase;
    let scale = T::lit(2.0) / v.norm_squared();
    DMatrix::from_fn(n, n - 1, |i, k| {
        let col = k + 1;
        let e = if i == col { creal(T::one()) } else { creal(T::zero()) };
        e - v[i] * v[col].conj() * creal(scale)
    })
}

/// Spectrum of `A` compressed to the complement of one unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedSpectrum<T: Real> {
    /// `n - 1` ascending eigenvalues.
    pub values: Vec<T>,
    /// Set in [`DeflationMode::PaperDropSmallest`] when the two smallest
    /// `|λ|` of `P A P` were within `1e-10` of each other.
    pub ambiguous_drop: bool,
}

fn check_dims<T: Real>(a: &HermitianMatrix<T>, n: usize) -> Result<()> {
    if a.dim() < 2 {
        return Err(Error::Dimension("projected spectra need n >= 2".into()));
    }
    if n != a.dim() {
        return Err(Error::Dimension(format!(
            "vector of length {n} for a {0}x{0} matrix",
            a.dim()
        )));
    }
    Ok(())
}

pub fn projected_spectrum<T: Real>(
    a: &HermitianMatrix<T>,
    c: &UnitVector<T>,
    mode: DeflationMode,
) -> Result<ProjectedSpectrum<T>> {
    check_dims(a, c.dim())?;
    match mode {
        DeflationMode::Restriction => {
            let b = complement_basis(c);
            let compressed = b.adjoint() * a.as_matrix() * &b;
            let values = eigenvalues(&HermitianMatrix::hermitian_part(&compressed))?;
            Ok(ProjectedSpectrum {
                values,
                ambiguous_drop: false,
            })
        }
        DeflationMode::PaperDropSmallest => {
            let p = projector(c);
            let pap = p.as_matrix() * a.as_matrix() * p.as_matrix();
            let mut values = eigenvalues(&HermitianMatrix::hermitian_part(&pap))?;
            let mut by_magnitude: Vec<usize> = (0..values.len()).collect();
            by_magnitude.sort_by(|&x, &y| {
                values[x]
                    .abs()
                    .partial_cmp(&values[y].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(x.cmp(&y))
            });
            let drop = by_magnitude[0];
            let ambiguous_drop =
                (values[by_magnitude[1]].abs() - values[drop].abs()) < T::tol(tolerance::AMBIGUOUS_DROP);
            values.remove(drop);
            Ok(ProjectedSpectrum { values, ambiguous_drop })
        }
    }
}

/// Row `j` holds the projected spectrum for basis column `c_j`.
pub fn projected_spectra<T: Real>(
    a: &HermitianMatrix<T>,
    basis: &OrthonormalBasis<T>,
    mode: DeflationMode,
) -> Result<MinorSpectra<T>> {
    check_dims(a, basis.dim())?;
    let results = (0..basis.dim())
        .into_par_iter()
        .map(|j| {
            basis
                .column(j)
                .and_then(|c| projected_spectrum(a, &c, mode))
                .map_err(|e| e.at_row(j))
        })
        .collect::<Result<Vec<_>>>()?;
    let ambiguous: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, s)| s.ambiguous_drop)
        .map(|(j, _)| j)
        .collect();
    let rows = results.into_iter().map(|s| s.values).collect();
    Ok(MinorSpectra::from_rows(rows, mode.provenance())?.with_ambiguous_rows(ambiguous))
}

/// `R[i][j] ≈ |c_j* q_i|^2` from the eigenvalues of `A` and of each
/// `P_j A P_j`. With `C = I` this is the minor identity.
pub fn basis_overlap_magnitudes<T: Real>(
    a: &HermitianMatrix<T>,
    basis: &OrthonormalBasis<T>,
    mode: DeflationMode,
) -> Result<SquaredMagnitudes<T>> {
    let decomp = eigendecompose(a)?;
    let y = projected_spectra(a, basis, mode)?;
    squared_magnitudes_from_spectra(decomp.eigenvalues().as_slice(), &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::eigenvector_magnitudes;

    fn max_dev(m: &DMatrix<C<f64>>) -> f64 {
        m.iter().fold(0.0, |a, z| a.max(z.norm()))
    }

    #[test]
    fn projector_on_e1() {
        let p = projector(&UnitVector::<f64>::standard(2, 0).unwrap());
        assert_eq!(
            p.as_matrix(),
            &DMatrix::from_row_slice(2, 2, &[creal(0.0), creal(0.0), creal(0.0), creal(1.0)])
        );
    }

    #[test]
    fn projector_on_diagonal_direction() {
        let s = 0.5f64.sqrt();
        let p = projector(&UnitVector::from_real(&[s, s]).unwrap());
        let expected = DMatrix::from_row_slice(2, 2, &[0.5, -0.5, -0.5, 0.5]);
        for (z, e) in p.as_matrix().iter().zip(expected.iter()) {
            assert!((z - creal(*e)).norm() < 1e-15);
        }
    }

    #[test]
    fn non_unit_vector_rejected() {
        assert!(matches!(UnitVector::from_real(&[1.0, 1.0]), Err(Error::NotUnit { .. })));
        assert!(UnitVector::<f64>::normalize(DVector::zeros(3)).is_err());
    }

    #[test]
    fn complement_of_first_axis() {
        let b = complement_basis(&UnitVector::<f64>::standard(3, 0).unwrap());
        let expected = DMatrix::from_row_slice(3, 2, &[0.0, 0.0, 1.0, 0.0, 0.0, 1.0]).map(creal);
        assert!(max_dev(&(b - expected)) < 1e-15);
    }

    #[test]
    fn complement_of_last_axis_spans_the_rest() {
        let n = 4;
        let b = complement_basis(&UnitVector::<f64>::standard(n, n - 1).unwrap());
        // last row of B vanishes, and B is orthonormal
        assert!(b.row(n - 1).iter().all(|z| z.norm() < 1e-15));
        let g = b.adjoint() * &b;
        assert!(max_dev(&(g - DMatrix::identity(n - 1, n - 1))) < 1e-15);
    }

    #[test]
    fn complement_of_complex_vector() {
        let raw = DVector::from_vec(vec![C::new(0.3, -0.4), C::new(-0.1, 0.7), C::new(0.2, 0.2)]);
        let c = UnitVector::normalize(raw).unwrap();
        let b = complement_basis(&c);
        assert!(max_dev(&(b.adjoint() * &b - DMatrix::identity(2, 2))) < 1e-14);
        let overlap = b.adjoint() * c.as_vector();
        assert!(overlap.iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn deletion_equivalence_on_diagonal() {
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let e2 = UnitVector::standard(3, 1).unwrap();
        for mode in [DeflationMode::Restriction, DeflationMode::PaperDropSmallest] {
            let s = projected_spectrum(&a, &e2, mode).unwrap();
            assert!(
                (s.values[0] - 1.0).abs() < 1e-15 && (s.values[1] - 3.0).abs() < 1e-15,
                "{mode:?}"
            );
            assert!(!s.ambiguous_drop);
        }
    }

    #[test]
    fn swap_projected_on_first_axis() {
        let a = HermitianMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e1 = UnitVector::standard(2, 0).unwrap();
        let s = projected_spectrum(&a, &e1, DeflationMode::Restriction).unwrap();
        assert_eq!(s.values.len(), 1);
        assert!(s.values[0].abs() < 1e-15);
        // both eigenvalues of PAP are zero: the drop cannot tell them apart
        let s = projected_spectrum(&a, &e1, DeflationMode::PaperDropSmallest).unwrap();
        assert!(s.ambiguous_drop);
    }

    #[test]
    fn identity_basis_on_diag() {
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 2.0]);
        let y = projected_spectra(&a, &OrthonormalBasis::identity(2), DeflationMode::Restriction).unwrap();
        assert_eq!(y.row(0), vec![2.0]);
        assert_eq!(y.row(1), vec![1.0]);
        assert_eq!(y.provenance(), Provenance::SubspaceRestriction);
    }

    #[test]
    fn rotated_basis_on_diag_gives_halves() {
        // A = diag(0, 2), C = 45° rotation: each P_j A P_j has nonzero
        // eigenvalue 1, so R[0][j] = (0-1)/(0-2) and R[1][j] = (2-1)/(2-0).
        let s = 0.5f64.sqrt();
        let c = OrthonormalBasis::from_real(DMatrix::from_row_slice(2, 2, &[s, -s, s, s])).unwrap();
        let a = HermitianMatrix::from_real_diagonal(&[0.0, 2.0]);
        for mode in [DeflationMode::Restriction, DeflationMode::PaperDropSmallest] {
            let r = basis_overlap_magnitudes(&a, &c, mode).unwrap();
            assert!(r.values().iter().all(|v| (v - 0.5).abs() < 1e-15), "{mode:?}");
        }
    }

    #[test]
    fn identity_basis_matches_minor_identity() {
        let a = HermitianMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = basis_overlap_magnitudes(&a, &OrthonormalBasis::identity(2), DeflationMode::Restriction).unwrap();
        let m = eigenvector_magnitudes(&a).unwrap();
        assert!(r.max_abs_diff(&m).unwrap() < 1e-15);
    }

    #[test]
    fn basis_must_be_orthonormal() {
        let bad = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(
            OrthonormalBasis::from_real(bad),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let c = UnitVector::standard(2, 0).unwrap();
        assert!(matches!(
            projected_spectrum(&a, &c, DeflationMode::Restriction),
            Err(Error::Dimension(_))
        ));
    }
}
