//! Scalar and vector aliases shared across the crate.

use nalgebra::{DMatrix, DVector};

pub use num_complex::Complex64;

/// Dense complex vector.
pub type CVector = DVector<Complex64>;
/// Dense complex matrix.
pub type CMatrix = DMatrix<Complex64>;

/// Hermitian inner product `<x, y> = sum_i x_i * conj(y_i)`.
///
/// This is the pairing used by every metric and automorphism formula in
/// the crate; it is linear in `x` and conjugate-linear in `y`.
pub fn inner_raw(x: &CVector, y: &CVector) -> Complex64 {
    // nalgebra's dotc conjugates its receiver, so <x,y> = y.dotc(x).
    y.dotc(x)
}

/// Euclidean norm of a complex vector.
pub fn norm(v: &CVector) -> f64 {
    v.norm()
}

/// Complex unit with zero imaginary part.
pub fn cplx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Real vector promoted to a complex one.
pub fn from_real(coords: &[f64]) -> CVector {
    CVector::from_iterator(coords.len(), coords.iter().map(|&r| Complex64::new(r, 0.0)))
}
