//! Thin wrappers over dense complex linear algebra.
//!
//! Matrices here are desk-scale (n <= 64), so dense SVD-based routines
//! are exact enough and fast enough for every consumer in the crate.

use crate::num::{CMatrix, CVector};
use crate::{Error, Result};

/// Operator norm: the largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// Smallest singular value. For an `m x k` matrix with `k >= m` this is
/// the m-th singular value, which certifies row surjectivity when positive.
pub fn sigma_min(m: &CMatrix) -> f64 {
    let sv = m.singular_values();
    sv.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Inverse of a square matrix.
pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::Internal("matrix is numerically singular".into()))
}

/// Minimal-norm least-squares solution of `A w = b` via the SVD
/// pseudoinverse with a relative rank cutoff.
pub fn lstsq_min_norm(a: &CMatrix, b: &CVector) -> Result<CVector> {
    let svd = a.clone().svd(true, true);
    let eps = 1e-13 * svd.singular_values.max().max(1.0);
    svd.solve(b, eps)
        .map_err(|e| Error::Internal(format!("least-squares solve failed: {e}")))
}

/// Checks `U^H U = I` to the given tolerance.
pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    if !u.is_square() {
        return false;
    }
    let n = u.nrows();
    let gram = u.adjoint() * u;
    let id = CMatrix::identity(n, n);
    (gram - id).iter().all(|c| c.norm() <= tol)
}

/// Largest modulus of any entry; used for operator-identity checks.
pub fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::cplx;

    #[test]
    fn singular_values_of_complex_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![
            cplx(0.0, 3.0),
            cplx(-2.0, 0.0),
            cplx(0.6, 0.8),
        ]));
        assert!((operator_norm(&m) - 3.0).abs() < 1e-12);
        assert!((sigma_min(&m) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_dense_complex_matrix() {
        // Unitary column mixing leaves singular values unchanged.
        let d = CMatrix::from_diagonal(&CVector::from_vec(vec![cplx(2.0, 0.0), cplx(0.5, 0.0)]));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = CMatrix::from_row_slice(2, 2, &[cplx(s, 0.0), cplx(0.0, s), cplx(0.0, s), cplx(s, 0.0)]);
        assert!(is_unitary(&u, 1e-12));
        let m = &u * &d;
        assert!((operator_norm(&m) - 2.0).abs() < 1e-10);
        assert!((sigma_min(&m) - 0.5).abs() < 1e-10);
    }

    #[test]
    fn min_norm_least_squares() {
        // Rank-one 2x2: rows [1, 1] and [0, 0]; solve A w = (2, 0).
        let a = CMatrix::from_row_slice(
            2,
            2,
            &[cplx(1.0, 0.0), cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)],
        );
        let b = CVector::from_vec(vec![cplx(2.0, 0.0), cplx(0.0, 0.0)]);
        let w = lstsq_min_norm(&a, &b).unwrap();
        // minimal-norm solution is (1, 1)
        assert!((w[0] - cplx(1.0, 0.0)).norm() < 1e-10);
        assert!((w[1] - cplx(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn inverse_round_trip() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[cplx(1.0, 0.5), cplx(0.2, -0.1), cplx(0.0, 0.3), cplx(2.0, 0.0)],
        );
        let inv = inverse(&m).unwrap();
        let prod = &m * &inv;
        let id = CMatrix::identity(2, 2);
        assert!(max_abs_entry(&(prod - id)) < 1e-12);
    }
}
