//! Ground truth for the identity: seeded instance generators, magnitudes
//! read directly off an eigendecomposition, and the three experiment runs.
//!
//! All randomness comes from [`SeededStream`], xoshiro256** seeded through
//! SplitMix64 (the reference `seed_from_u64`). Uniform draws take the top 53
//! bits of each output; Gaussian draws use Box–Muller on pairs of uniforms.
//! Given `(n, seed)` every generator is bit-reproducible.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::identity::eigenvector_magnitudes;
use crate::identity::squared_magnitudes_from_spectra;
use crate::magnitudes::SquaredMagnitudes;
use crate::projection::{basis_overlap_magnitudes, projected_spectra, DeflationMode, OrthonormalBasis, UnitVector};
use crate::scalar::{cplx, creal, Real, C};
use crate::spectral::{eigendecompose, SpectralDecomposition};

/// Deterministic random stream.
#[derive(Debug, Clone)]
pub struct SeededStream {
    rng: Xoshiro256StarStar,
    spare: Option<f64>,
}

impl SeededStream {
    pub fn new(seed: u64) -> Self {
        SeededStream {
            rng: Xoshiro256StarStar::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform on `[0, 1)` with 53 random mantissa bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // 1 - u lies in (0, 1], keeping ln finite
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }
}

/// `B + B*` with `B` uniform on `[0, 1)` in both real and imaginary parts
/// (imaginary omitted when `complex` is false). Real parts are drawn first
/// for all `n²` entries in row-major order, then the imaginary parts.
pub fn random_hermitian<T: Real>(n: usize, seed: u64, complex: bool) -> HermitianMatrix<T> {
    let mut stream = SeededStream::new(seed);
    let re: Vec<f64> = (0..n * n).map(|_| stream.uniform()).collect();
    let im: Vec<f64> = if complex {
        (0..n * n).map(|_| stream.uniform()).collect()
    } else {
        vec![0.0; n * n]
    };
    let b = DMatrix::from_fn(n, n, |i, j| cplx(T::lit(re[i * n + j]), T::lit(im[i * n + j])));
    // b_ij + conj(b_ji) is the exact conjugate of b_ji + conj(b_ij)
    HermitianMatrix::with_tolerance(&b + b.adjoint(), T::zero()).expect("B + B* is Hermitian")
}

/// Real orthogonal matrix: Householder QR of a Gaussian matrix, with each
/// column of `Q` negated where the matching diagonal entry of `R` is negative.
pub fn random_orthonormal<T: Real>(n: usize, seed: u64) -> OrthonormalBasis<T> {
    let mut stream = SeededStream::new(seed);
    let g: Vec<f64> = (0..n * n).map(|_| stream.gaussian()).collect();
    let m = DMatrix::from_fn(n, n, |i, j| T::lit(g[i * n + j]));
    let qr = m.qr();
    let r = qr.r();
    let mut q = qr.q();
    for (k, mut col) in q.column_iter_mut().enumerate() {
        if r[(k, k)] < T::zero() {
            col.neg_mut();
        }
    }
    OrthonormalBasis::from_real(q).expect("QR factor is orthogonal")
}

/// Gaussian direction, normalized. Real unless `complex`.
pub fn random_unit_vector<T: Real>(n: usize, seed: u64, complex: bool) -> UnitVector<T> {
    let mut stream = SeededStream::new(seed);
    let v = DVector::from_fn(n, |_, _| {
        let re = stream.gaussian();
        let im = if complex { stream.gaussian() } else { 0.0 };
        cplx(T::lit(re), T::lit(im))
    });
    UnitVector::normalize(v).expect("Gaussian vector is nonzero")
}

/// `U diag(spectrum) U*` for a seeded random orthogonal `U`; lets tests plant
/// repeated eigenvalues.
pub fn hermitian_with_spectrum<T: Real>(spectrum: &[T], seed: u64) -> HermitianMatrix<T> {
    let n = spectrum.len();
    let u = random_orthonormal::<T>(n, seed);
    let u = u.as_matrix();
    let mut ud = u.clone();
    for (k, mut col) in ud.column_iter_mut().enumerate() {
        col *= creal(spectrum[k]);
    }
    HermitianMatrix::hermitian_part(&(ud * u.adjoint()))
}

/// `R[i][j] = |Q[j][i]|^2`, read off the eigenvectors.
pub fn reference_magnitudes<T: Real>(a: &HermitianMatrix<T>) -> Result<SquaredMagnitudes<T>> {
    let d = eigendecompose(a)?;
    Ok(magnitudes_of(&d))
}

fn magnitudes_of<T: Real>(d: &SpectralDecomposition<T>) -> SquaredMagnitudes<T> {
    let q = d.eigenvectors();
    SquaredMagnitudes::fully_valid(q.transpose().map(|z| z.norm_sqr()))
}

/// `R[i][j] = |c_j* q_i|^2`, i.e. the transposed squared magnitudes of `C* Q`.
pub fn reference_overlap_magnitudes<T: Real>(
    a: &HermitianMatrix<T>,
    basis: &OrthonormalBasis<T>,
) -> Result<SquaredMagnitudes<T>> {
    let d = eigendecompose(a)?;
    if basis.dim() != d.dim() {
        return Err(Error::Dimension("basis and matrix differ in size".into()));
    }
    let s: DMatrix<C<T>> = basis.as_matrix().adjoint() * d.eigenvectors();
    Ok(SquaredMagnitudes::fully_valid(s.transpose().map(|z| z.norm_sqr())))
}

/// Largest elementwise difference, skipping entries flagged invalid in `r`.
pub fn max_abs_diff<T: Real>(r: &SquaredMagnitudes<T>, reference: &SquaredMagnitudes<T>) -> Result<T> {
    r.max_abs_diff(reference)
}

/// The three comparisons: minors, projections onto `e_j`, projections onto
/// the columns of a random orthogonal basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Minors,
    IdentityBasis,
    ArbitraryBasis,
}

impl Experiment {
    pub const ALL: [Experiment; 3] = [
        Experiment::Minors,
        Experiment::IdentityBasis,
        Experiment::ArbitraryBasis,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Minors => "minors",
            Experiment::IdentityBasis => "identity-basis",
            Experiment::ArbitraryBasis => "arbitrary-basis",
        }
    }
}

/// Outcome of one experiment. `passed` holds iff `max_abs_error < tolerance`;
/// `max_abs_error` is absent when the run could not produce a full table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: Experiment,
    pub n: usize,
    pub seed: Option<u64>,
    pub mode: Option<DeflationMode>,
    pub max_abs_error: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub wall_time: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

impl ExperimentReport {
    pub fn is_degenerate(&self) -> bool {
        self.reason.as_deref() == Some("degenerate")
    }
}

/// Parameters for [`run_experiment`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub tolerance: f64,
    pub mode: DeflationMode,
    /// Seed recorded in the report (the instance seed, when there is one).
    pub seed: Option<u64>,
    /// Seed of the random basis in [`Experiment::ArbitraryBasis`].
    pub basis_seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            tolerance: 1e-10,
            mode: DeflationMode::Restriction,
            seed: None,
            basis_seed: 0,
        }
    }
}

fn compute<T: Real>(
    a: &HermitianMatrix<T>,
    experiment: Experiment,
    config: &ExperimentConfig,
) -> Result<(SquaredMagnitudes<T>, SquaredMagnitudes<T>, Vec<T>)> {
    let n = a.dim();
    let decomp = eigendecompose(a)?;
    let w: Vec<T> = decomp.eigenvalues().iter().copied().collect();
    match experiment {
        Experiment::Minors => {
            let r = eigenvector_magnitudes(a)?;
            Ok((r, magnitudes_of(&decomp), w))
        }
        Experiment::IdentityBasis => {
            let x = projected_spectra(a, &OrthonormalBasis::identity(n), config.mode)?;
            let r = squared_magnitudes_from_spectra(&w, &x)?;
            Ok((r, magnitudes_of(&decomp), w))
        }
        Experiment::ArbitraryBasis => {
            let basis = random_orthonormal::<T>(n, config.basis_seed);
            let r = basis_overlap_magnitudes(a, &basis, config.mode)?;
            let reference = reference_overlap_magnitudes(a, &basis)?;
            Ok((r, reference, w))
        }
    }
}

/// Runs one experiment on `a`; failures become failed reports, never panics.
pub fn run_experiment<T: Real>(
    a: &HermitianMatrix<T>,
    experiment: Experiment,
    config: &ExperimentConfig,
) -> ExperimentReport {
    let start = Instant::now();
    let mut report = ExperimentReport {
        experiment,
        n: a.dim(),
        seed: config.seed,
        mode: (experiment != Experiment::Minors).then_some(config.mode),
        max_abs_error: None,
        tolerance: config.tolerance,
        passed: false,
        wall_time: 0.0,
        reason: None,
    };
    match compute(a, experiment, config) {
        Ok((r, reference, w)) => {
            if let Err(e) = r.ensure_valid(&w) {
                debug_assert!(e.is_degenerate());
                report.reason = Some("degenerate".into());
            } else {
                match r.max_abs_diff(&reference) {
                    Ok(err) => {
                        let err = err.as_f64();
                        report.max_abs_error = Some(err);
                        report.passed = err < config.tolerance;
                        if !report.passed {
                            report.reason = Some("mismatch".into());
                        }
                    }
                    Err(e) => report.reason = Some(format!("error: {e}")),
                }
            }
        }
        Err(e) if e.is_degenerate() => report.reason = Some("degenerate".into()),
        Err(e) => report.reason = Some(format!("error: {e}")),
    }
    report.wall_time = start.elapsed().as_secs_f64();
    report
}
