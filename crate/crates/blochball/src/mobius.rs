//! Mobius automorphisms `phi_a` of the unit ball.
//!
//! `phi_a = (s_a Q_a + P_a) o m_a` with `m_a(y) = (a - y)/(1 - <y, a>)`,
//! `P_a` the orthogonal projection onto `span{a}`, `Q_a = I - P_a` and
//! `s_a = sqrt(1 - ||a||^2)`. The map swaps `0` and `a`, is an involution,
//! and realizes the pseudohyperbolic metric as `rho(x, y) = ||phi_y(x)||`.

use crate::ball::{inner, BallPoint};
use crate::linalg;
use crate::num::{inner_raw, CMatrix, CVector, Complex64};
use crate::selfmap::SelfMap;
use crate::{Error, Result};

/// Orthogonal projection of `v` onto the line spanned by `a`.
///
/// For `a = 0` the projection is the zero map by convention, which makes
/// `phi_0 = -identity` the continuous limit of the automorphism family.
pub fn project_p(a: &BallPoint, v: &CVector) -> CVector {
    if a.is_origin() {
        return CVector::zeros(a.dim());
    }
    let coeff = inner_raw(v, a.coords()) / Complex64::new(a.norm() * a.norm(), 0.0);
    a.coords() * coeff
}

/// Complementary projection `Q_a = I - P_a`.
pub fn project_q(a: &BallPoint, v: &CVector) -> CVector {
    v - project_p(a, v)
}

/// Squared norm of `phi_a'(0)^{-1}(w)` through the closed form
/// `((1 - ||a||^2) ||w||^2 + |<w, a>|^2) / (1 - ||a||^2)^2`.
pub fn inv_deriv0_norm_sq(a: &BallPoint, w: &CVector) -> f64 {
    let s2 = 1.0 - a.norm() * a.norm();
    let pairing = inner_raw(w, a.coords()).norm_sqr();
    (s2 * w.norm_squared() + pairing) / (s2 * s2)
}

/// The automorphism `phi_a`, optionally post-composed with a unitary.
#[derive(Debug, Clone)]
pub struct MobiusMap {
    center: BallPoint,
    s: f64,
    unitary: Option<CMatrix>,
}

impl MobiusMap {
    pub fn new(center: BallPoint) -> Self {
        let s = (1.0 - center.norm() * center.norm()).sqrt();
        Self {
            center,
            s,
            unitary: None,
        }
    }

    /// `U o phi_a` for a unitary `U`; the unitary is validated.
    pub fn with_unitary(center: BallPoint, unitary: CMatrix) -> Result<Self> {
        if unitary.nrows() != center.dim() || unitary.ncols() != center.dim() {
            return Err(Error::DimensionMismatch(unitary.nrows(), center.dim()));
        }
        if !linalg::is_unitary(&unitary, 1e-10) {
            return Err(Error::InvalidArgument(
                "post-composition matrix is not unitary".into(),
            ));
        }
        let s = (1.0 - center.norm() * center.norm()).sqrt();
        Ok(Self {
            center,
            s,
            unitary: Some(unitary),
        })
    }

    pub fn center(&self) -> &BallPoint {
        &self.center
    }

    /// `s_a = sqrt(1 - ||a||^2)`.
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn has_unitary(&self) -> bool {
        self.unitary.is_some()
    }

    /// Evaluates the automorphism. `1 - <y, a>` cannot vanish inside the
    /// ball, so the formula is total.
    pub fn apply(&self, y: &BallPoint) -> Result<BallPoint> {
        if y.dim() != self.dim() {
            return Err(Error::DimensionMismatch(y.dim(), self.dim()));
        }
        let a = &self.center;
        let denom = Complex64::new(1.0, 0.0) - inner(y, a)?;
        let m = (a.coords() - y.coords()) / denom;
        let mut out = project_q(a, &m) * Complex64::new(self.s, 0.0) + project_p(a, &m);
        if let Some(u) = &self.unitary {
            out = u * out;
        }
        Ok(BallPoint::from_map_output(out))
    }

    /// Frechet derivative at the origin as a dense matrix. Equals
    /// `-(s_a Q_a + s_a^2 P_a)` (pre-unitary), hence is always invertible.
    pub fn deriv0(&self) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::identity(n, n) * Complex64::new(-self.s, 0.0);
        if !self.center.is_origin() {
            // add -(s^2 - s) P_a
            let a = self.center.coords();
            let scale =
                Complex64::new((self.s - self.s * self.s) / self.center.norm().powi(2), 0.0);
            m += (a * a.adjoint()) * scale;
        }
        match &self.unitary {
            Some(u) => u * m,
            None => m,
        }
    }

    /// Frechet derivative at an arbitrary interior point.
    pub fn deriv_at(&self, x: &BallPoint) -> CMatrix {
        assert_eq!(x.dim(), self.dim(), "dimension mismatch");
        let n = self.dim();
        let a = &self.center;
        let d = Complex64::new(1.0, 0.0) - inner_raw(x.coords(), a.coords());
        // m_a'(x) = (-D I + (a - x) conj(a)^T) / D^2
        let diff = a.coords() - x.coords();
        let mut m = CMatrix::identity(n, n) * (-d);
        m += diff * a.coords().adjoint();
        m /= d * d;
        // compose with s Q + P = s I + (1 - s) P
        let mut t = m.clone() * Complex64::new(self.s, 0.0);
        if !a.is_origin() {
            let scale = Complex64::new((1.0 - self.s) / (a.norm() * a.norm()), 0.0);
            t += (a.coords() * a.coords().adjoint()) * scale * m;
        }
        match &self.unitary {
            Some(u) => u * t,
            None => t,
        }
    }
}

/// Quotient `B(x, w) / C(x, w)` with
/// `B = ||phi_{psi(x)}'(0)^{-1}(psi'(x) w)||` and `C = ||phi_x'(0)^{-1}(w)||`.
///
/// The Schwarz lemma forces the quotient below one for every analytic
/// self-map `psi`, with equality exactly for automorphisms.
pub fn quotient_bc(psi: &SelfMap, x: &BallPoint, w: &CVector) -> Result<f64> {
    if w.norm() == 0.0 {
        return Err(Error::InvalidArgument("quotient requires w != 0".into()));
    }
    if x.dim() != psi.dim() || w.len() != psi.dim() {
        return Err(Error::DimensionMismatch(x.dim(), psi.dim()));
    }
    let image = psi.apply(x);
    let jw = psi.jacobian(x) * w;
    let b = inv_deriv0_norm_sq(&image, &jw).sqrt();
    let c = inv_deriv0_norm_sq(x, w).sqrt();
    Ok(b / c)
}
