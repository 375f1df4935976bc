//! Inverse problem for a constrained quadratic form.
//!
//! The stationary values of `x* A x` on `{|x| = 1, c* x = 0}` are the
//! eigenvalues of `A` compressed to the complement of `c`. Conversely, given
//! ascending targets `x_1..x_{n-1}` interlacing the eigenvalues `w` of `A`,
//! the constraint `c = Q d` with
//!
//! ```text
//! |d_j|^2 = prod_k (w_j - x_k) / prod_{k != j} (w_j - w_k)
//! ```
//!
//! produces exactly those stationary values. Only `|d_j|` is determined; each
//! component's sign (or, for complex `A`, unit phase) is free.

use nalgebra::ComplexField;
use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::identity::{ensure_ascending, gap_ratio};
use crate::magnitudes::interlacing_violation;
use crate::projection::{projected_spectrum, DeflationMode, UnitVector};
use crate::scalar::{creal, Real, C};
use crate::spectral::{degeneracy_threshold, min_gap, spread, SpectralDecomposition};
use crate::tolerance;

/// A recovered constraint and the quantities that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintRecovery<T: Real> {
    /// Ascending target stationary values, after snapping to eigenvalues.
    pub targets: Vec<T>,
    /// `|d_j|^2`, summing to one.
    pub weights: Vec<T>,
    /// Unit phase applied to each `|d_j|`; `±1` in the real case.
    pub signs: Vec<C<T>>,
    /// `c = Q d`.
    pub constraint: UnitVector<T>,
}

impl<T: Real> ConstraintRecovery<T> {
    /// `d_j = signs_j * sqrt(weights_j)`.
    pub fn coefficients(&self) -> Vec<C<T>> {
        self.weights
            .iter()
            .zip(&self.signs)
            .map(|(&w, &s)| s * creal(w.sqrt()))
            .collect()
    }
}

/// All-`+1` phases.
pub fn positive_signs<T: Real>(n: usize) -> Vec<C<T>> {
    vec![creal(T::one()); n]
}

/// Phases from a `±` pattern: `true` is `+1`, `false` is `-1`.
pub fn signs_from_pattern<T: Real>(pattern: &[bool]) -> Vec<C<T>> {
    pattern
        .iter()
        .map(|&p| creal(if p { T::one() } else { -T::one() }))
        .collect()
}

fn check_lengths<T: Real>(w: &[T], x: &[T]) -> Result<()> {
    if w.is_empty() || x.len() + 1 != w.len() {
        return Err(Error::Dimension(format!(
            "expected {} targets for {} eigenvalues, got {}",
            w.len().saturating_sub(1),
            w.len(),
            x.len()
        )));
    }
    Ok(())
}

/// True iff `w_k - tol <= x_k <= w_{k+1} + tol` for every `k`.
pub fn check_interlacing<T: Real>(w: &[T], x: &[T], tol: T) -> Result<bool> {
    check_lengths(w, x)?;
    Ok(interlacing_violation(w, x, tol).is_none())
}

/// Replaces each target within `1e-10 * spread` of a neighbouring eigenvalue by that eigenvalue.
fn pin_targets<T: Real>(w: &[T], x: &[T]) -> Vec<T> {
    let snap = T::tol(tolerance::BOUNDARY_SNAP_REL) * spread(w);
    x.iter()
        .enumerate()
        .map(|(k, &xk)| {
            if (xk - w[k]).abs() <= snap {
                w[k]
            } else if (xk - w[k + 1]).abs() <= snap {
                w[k + 1]
            } else {
                xk
            }
        })
        .collect()
}

/// `|d_j|^2` for every eigenvalue, given interlacing targets.
///
/// Targets within `1e-10 * spread` of an eigenvalue are pinned to it, which
/// zeroes the matching weight exactly. Negative weights down to `-1e-12` are
/// roundoff: they are zeroed and the rest renormalized.
pub fn constraint_weights<T: Real>(w: &[T], x: &[T]) -> Result<Vec<T>> {
    check_lengths(w, x)?;
    ensure_ascending(w, "eigenvalues")?;
    ensure_ascending(x, "targets")?;
    let n = w.len();

    let slack = T::tol(tolerance::INTERLACING_REL) * spread(w);
    if let Some(index) = interlacing_violation(w, x, slack) {
        return Err(Error::Infeasible { index });
    }
    let threshold = degeneracy_threshold(w);
    if let Some(gap) = min_gap(w).filter(|&g| g < threshold) {
        let rows = (0..n - 1).filter(|&k| w[k + 1] - w[k] < threshold).collect();
        return Err(Error::Degenerate {
            rows,
            gap: gap.as_f64(),
            threshold: threshold.as_f64(),
        });
    }

    let pinned = pin_targets(w, x);

    let roundoff = T::tol(tolerance::WEIGHT_ROUNDOFF);
    let mut clamped = false;
    let mut weights = Vec::with_capacity(n);
    for j in 0..n {
        let d2 = gap_ratio(w, j, &pinned);
        if d2 < T::zero() {
            if d2 < -roundoff {
                return Err(Error::Infeasible { index: j.min(n - 2) });
            }
            clamped = true;
            weights.push(T::zero());
        } else {
            weights.push(d2);
        }
    }
    if clamped {
        let total = weights.iter().fold(T::zero(), |s, &v| s + v);
        for v in &mut weights {
            *v /= total;
        }
    }
    Ok(weights)
}

/// Builds `c = Q d`, `d_j = signs_j * sqrt(|d_j|^2)`, that makes `targets`
/// the stationary values of the constrained form. Any choice of signs
/// (unit phases) yields the same stationary values.
pub fn recover_constraint<T: Real>(
    decomp: &SpectralDecomposition<T>,
    targets: &[T],
    signs: &[C<T>],
) -> Result<ConstraintRecovery<T>> {
    let n = decomp.dim();
    if signs.len() != n {
        return Err(Error::Dimension(format!("expected {n} signs, got {}", signs.len())));
    }
    let unit_tol = T::tol(tolerance::UNIT_NORM);
    if let Some(j) = signs.iter().position(|s| !((s.modulus() - T::one()).abs() <= unit_tol)) {
        return Err(Error::InvalidInput(format!("sign {j} is not a unit phase")));
    }
    let w = decomp.eigenvalues().as_slice();
    let weights = constraint_weights(w, targets)?;
    let d = DVector::from_iterator(n, weights.iter().zip(signs).map(|(&wt, &s)| s * creal(wt.sqrt())));
    let c = decomp.eigenvectors() * d;
    let constraint = UnitVector::with_tolerance(c, T::tol(tolerance::ORTHONORMAL))?;

    Ok(ConstraintRecovery {
        targets: pin_targets(w, targets),
        weights,
        signs: signs.to_vec(),
        constraint,
    })
}

/// Stationary values of `x* A x` subject to `|x| = 1`, `c* x = 0`, ascending.
pub fn stationary_values<T: Real>(a: &HermitianMatrix<T>, c: &UnitVector<T>) -> Result<Vec<T>> {
    projected_spectrum(a, c, DeflationMode::Restriction).map(|s| s.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::eigendecompose;

    #[test]
    fn interlacing_basic() {
        assert!(check_interlacing(&[0.0, 2.0], &[1.0], 1e-12).unwrap());
        assert!(!check_interlacing(&[0.0, 2.0], &[3.0], 1e-12).unwrap());
        assert!(matches!(
            check_interlacing(&[0.0, 2.0], &[1.0, 1.5], 1e-12),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn symmetric_targets_split_evenly() {
        assert_eq!(constraint_weights(&[-1.0, 1.0], &[0.0]).unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn pinned_target_zeroes_weight() {
        assert_eq!(constraint_weights(&[0.0, 2.0], &[0.0]).unwrap(), vec![0.0, 1.0]);
        // within snapping distance of w_1
        let d2 = constraint_weights(&[0.0, 2.0], &[1e-12]).unwrap();
        assert_eq!(d2, vec![0.0, 1.0]);
    }

    #[test]
    fn infeasible_target_names_index() {
        assert_eq!(
            constraint_weights(&[0.0, 1.0, 2.0], &[0.5, 2.5]).unwrap_err(),
            Error::Infeasible { index: 1 }
        );
    }

    #[test]
    fn repeated_eigenvalue_is_degenerate() {
        let err = constraint_weights(&[0.0, 1.0, 1.0], &[0.5, 1.0]).unwrap_err();
        assert!(err.is_degenerate(), "{err:?}");
    }

    #[test]
    fn recover_on_diag() {
        let a = HermitianMatrix::from_real_diagonal(&[0.0, 2.0]);
        let d = eigendecompose(&a).unwrap();
        let s = 0.5f64.sqrt();
        for (pattern, expect) in [([true, true], [s, s]), ([true, false], [s, -s])] {
            let rec = recover_constraint(&d, &[1.0], &signs_from_pattern(&pattern)).unwrap();
            let c = rec.constraint.as_vector();
            assert!((c[0].re - expect[0]).abs() < 1e-15 && (c[1].re - expect[1]).abs() < 1e-15);
            let sv = stationary_values(&a, &rec.constraint).unwrap();
            assert!((sv[0] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn stationary_values_hand_computed() {
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let sv = stationary_values(&a, &UnitVector::standard(3, 1).unwrap()).unwrap();
        assert!((sv[0] - 1.0).abs() < 1e-15 && (sv[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn bad_sign_vector() {
        let a = HermitianMatrix::from_real_diagonal(&[0.0, 2.0]);
        let d = eigendecompose(&a).unwrap();
        assert!(matches!(
            recover_constraint(&d, &[1.0], &positive_signs(3)),
            Err(Error::Dimension(_))
        ));
        let half = vec![creal(0.5), creal(1.0)];
        assert!(matches!(
            recover_constraint(&d, &[1.0], &half),
            Err(Error::InvalidInput(_))
        ));
    }
}
