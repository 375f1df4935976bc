//! Scalar abstraction shared by every numeric routine in the crate.

use nalgebra::{Complex, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point scalar the library is generic over (`f32` or `f64`).
///
/// Complex entries are `Complex<T>`; nalgebra's `ComplexField` impl for that
/// type supplies the Hermitian eigensolver.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync + 'static {
    /// Machine epsilon as an `f64`.
    const EPSILON: f64;

    /// Rescale a tolerance stated for `f64` to this precision.
    ///
    /// A tolerance `x = eps64^a` maps to `eps^a`, so a check that asks for
    /// "about two thirds of the available digits" keeps asking for that
    /// in lower precision. For `f64` this is the identity.
    fn tol(x: f64) -> Self {
        let exponent = x.ln() / f64::EPSILON.ln();
        Self::from_f64(Self::EPSILON.powf(exponent)).expect("tolerance representable")
    }

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON;

    fn tol(x: f64) -> Self {
        x
    }

    fn lit(x: f64) -> Self {
        x
    }

    fn as_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    const EPSILON: f64 = f32::EPSILON as f64;
}

/// Complex scalar over `T`.
pub type C<T> = Complex<T>;

pub(crate) fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

pub(crate) fn creal<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_tolerances_pass_through() {
        assert_eq!(<f64 as Real>::tol(1e-10), 1e-10);
        assert_eq!(<f64 as Real>::tol(1e-8), 1e-8);
    }

    #[test]
    fn f32_tolerances_keep_digit_fraction() {
        let t = <f32 as Real>::tol(1e-8);
        assert!(t > 1e-5 && t < 1e-3, "{t}");
        let t = <f32 as Real>::tol(f64::EPSILON);
        assert!((t - f32::EPSILON).abs() < 1e-9);
    }
}
