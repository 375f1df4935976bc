//! Eigenvector element magnitudes of Hermitian matrices computed from
//! eigenvalues alone, and the inverse problem of finding the linear
//! constraint that gives a quadratic form prescribed stationary values.
//!
//! Everything is generic over the real scalar ([`Real`]: `f32` or `f64`);
//! the `*64` aliases below fix it to double precision.
//!
//! ```
//! use eigenid::{eigenvector_magnitudes, HermitianMatrix64};
//!
//! let a = HermitianMatrix64::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
//! let r = eigenvector_magnitudes(&a).unwrap();
//! assert!((r.get(0, 1) - 0.5).abs() < 1e-15);
//! ```

// `!(x <= tol)` is deliberate throughout: NaN must fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod golub;
pub mod hermitian;
pub mod identity;
pub mod magnitudes;
pub mod oracle;
pub mod projection;
pub mod scalar;
pub mod spectral;
pub mod tolerance;

pub use error::{Error, Result};
pub use golub::{
    check_interlacing, constraint_weights, positive_signs, recover_constraint, signs_from_pattern, stationary_values,
    ConstraintRecovery,
};
pub use hermitian::{validate_hermitian, HermitianMatrix};
pub use identity::{eigenvector_magnitudes, minor, minor_spectra, squared_magnitudes_from_spectra};
pub use magnitudes::{MinorSpectra, Provenance, SquaredMagnitudes};
pub use oracle::{
    max_abs_diff, random_hermitian, random_orthonormal, reference_magnitudes, run_experiment, Experiment,
    ExperimentConfig, ExperimentReport,
};
pub use projection::{
    basis_overlap_magnitudes, complement_basis, projected_spectra, projected_spectrum, projector, DeflationMode,
    OrthonormalBasis, ProjectedSpectrum, UnitVector,
};
pub use scalar::{Real, C};
pub use spectral::{eigendecompose, SpectralDecomposition};

pub use nalgebra::{Complex, DMatrix, DVector};

pub type HermitianMatrix64 = HermitianMatrix<f64>;
pub type HermitianMatrix32 = HermitianMatrix<f32>;
pub type SpectralDecomposition64 = SpectralDecomposition<f64>;
pub type SpectralDecomposition32 = SpectralDecomposition<f32>;
pub type MinorSpectra64 = MinorSpectra<f64>;
pub type SquaredMagnitudes64 = SquaredMagnitudes<f64>;
pub type UnitVector64 = UnitVector<f64>;
pub type OrthonormalBasis64 = OrthonormalBasis<f64>;
pub type ConstraintRecovery64 = ConstraintRecovery<f64>;
