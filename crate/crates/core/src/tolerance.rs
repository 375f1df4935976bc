//! Default tolerances, stated for `f64`.
//!
//! Routines convert them with [`Real::tol`](crate::Real::tol) so the same
//! relative strictness applies in single precision.

/// Hermiticity check, relative to the largest entry modulus.
pub const HERMITIAN_REL: f64 = 1e-12;

/// Eigenvalue gaps below `DEGENERACY_REL * (w_max - w_min + 1)` count as repeated.
pub const DEGENERACY_REL: f64 = 1e-8;

/// Interlacing slack, relative to the spectral spread.
pub const INTERLACING_REL: f64 = 1e-10;

/// `|c| - 1` allowed for a unit vector.
pub const UNIT_NORM: f64 = 1e-12;

/// `max |C*C - I|` allowed for an orthonormal basis.
pub const ORTHONORMAL: f64 = 1e-10;

/// Roundoff allowance before a squared magnitude is clamped into `[0, 1]`.
pub const MAGNITUDE_CLAMP: f64 = 1e-8;

/// Negative constraint weights this small are roundoff and are zeroed.
pub const WEIGHT_ROUNDOFF: f64 = 1e-12;

/// Targets this close (relative to spread) to an eigenvalue are pinned to it.
pub const BOUNDARY_SNAP_REL: f64 = 1e-10;

/// Two smallest `|eigenvalue|` of `PAP` closer than this make the drop ambiguous.
pub const AMBIGUOUS_DROP: f64 = 1e-10;
