//! Central-difference derivative checks for holomorphic data.
//!
//! These are diagnostic routines only: the analytic gradients and
//! Jacobians in the crate are exact, and tests verify them against the
//! difference quotients computed here. Holomorphy is checked by comparing
//! the real-step and imaginary-step quotients (Cauchy-Riemann consistency).

use crate::num::{CMatrix, CVector, Complex64};

/// Result of a difference-quotient gradient: the averaged quotient and
/// the worst Cauchy-Riemann defect `|g_re - g_im|` across coordinates.
pub struct GradientCheck {
    pub gradient: CVector,
    pub cr_defect: f64,
}

/// Central-difference complex gradient of a scalar function.
pub fn central_gradient<F>(f: F, x: &CVector, h: f64) -> GradientCheck
where
    F: Fn(&CVector) -> Complex64,
{
    let n = x.len();
    let mut grad = CVector::zeros(n);
    let mut cr_defect: f64 = 0.0;
    for i in 0..n {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[i] += Complex64::new(h, 0.0);
        xm[i] -= Complex64::new(h, 0.0);
        let g_re = (f(&xp) - f(&xm)) / Complex64::new(2.0 * h, 0.0);
        let mut yp = x.clone();
        let mut ym = x.clone();
        yp[i] += Complex64::new(0.0, h);
        ym[i] -= Complex64::new(0.0, h);
        let g_im = (f(&yp) - f(&ym)) / Complex64::new(0.0, 2.0 * h);
        cr_defect = cr_defect.max((g_re - g_im).norm());
        grad[i] = (g_re + g_im) / Complex64::new(2.0, 0.0);
    }
    GradientCheck { gradient: grad, cr_defect }
}

/// Result of a difference-quotient Jacobian.
pub struct JacobianCheck {
    pub jacobian: CMatrix,
    pub cr_defect: f64,
}

/// Central-difference complex Jacobian of a vector function
/// (rows indexed by output components).
pub fn central_jacobian<F>(f: F, x: &CVector, h: f64) -> JacobianCheck
where
    F: Fn(&CVector) -> CVector,
{
    let n = x.len();
    let m = f(x).len();
    let mut jac = CMatrix::zeros(m, n);
    let mut cr_defect: f64 = 0.0;
    for i in 0..n {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[i] += Complex64::new(h, 0.0);
        xm[i] -= Complex64::new(h, 0.0);
        let col_re = (f(&xp) - f(&xm)) / Complex64::new(2.0 * h, 0.0);
        let mut yp = x.clone();
        let mut ym = x.clone();
        yp[i] += Complex64::new(0.0, h);
        ym[i] -= Complex64::new(0.0, h);
        let col_im = (f(&yp) - f(&ym)) / Complex64::new(0.0, 2.0 * h);
        cr_defect = cr_defect.max((&col_re - &col_im).norm());
        let col = (col_re + col_im) / Complex64::new(2.0, 0.0);
        for r in 0..m {
            jac[(r, i)] = col[r];
        }
    }
    JacobianCheck { jacobian: jac, cr_defect }
}
