//! Points of the open unit ball of `C^n` and the pseudohyperbolic and
//! hyperbolic metrics on the disk and on the ball.

use crate::num::{inner_raw, CVector, Complex64};
use crate::{Error, Result, BOUNDARY_MARGIN};

/// A vector in `C^n` with Euclidean norm strictly below one.
///
/// Validation happens once at construction; every metric and automorphism
/// operation may assume the invariants afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    coords: CVector,
    norm: f64,
}

impl BallPoint {
    /// Builds a point, requiring `||coords|| <= 1 - 1e-9`.
    pub fn new(coords: CVector) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        let norm = coords.norm();
        if !norm.is_finite() || norm > 1.0 - BOUNDARY_MARGIN {
            return Err(Error::OutsideBall {
                norm,
                max: 1.0 - BOUNDARY_MARGIN,
            });
        }
        Ok(Self { coords, norm })
    }

    /// Builds a point from real coordinates.
    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(crate::num::from_real(coords))
    }

    /// One-dimensional point from a disk scalar.
    pub fn one_dim(z: Complex64) -> Result<Self> {
        Self::new(CVector::from_vec(vec![z]))
    }

    /// The origin of `C^n`.
    pub fn origin(dim: usize) -> Self {
        Self {
            coords: CVector::zeros(dim),
            norm: 0.0,
        }
    }

    /// Accepts outputs of ball self-maps, which are strictly inside the
    /// ball but may land closer to the boundary than user-constructed
    /// points are allowed to.
    pub(crate) fn from_map_output(coords: CVector) -> Self {
        let norm = coords.norm();
        assert!(
            norm.is_finite() && norm < 1.0,
            "self-map output escaped the ball (norm {norm})"
        );
        Self { coords, norm }
    }

    pub fn coords(&self) -> &CVector {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn is_origin(&self) -> bool {
        self.norm == 0.0
    }

    /// Scales the point by a complex factor, provided the result stays
    /// strictly inside the ball.
    pub fn scaled(&self, z: Complex64) -> Result<Self> {
        let coords = self.coords.map(|c| c * z);
        let norm = coords.norm();
        if norm >= 1.0 - 1e-12 {
            return Err(Error::OutsideBall {
                norm,
                max: 1.0 - 1e-12,
            });
        }
        Ok(Self { coords, norm })
    }
}

/// Hermitian inner product of two points.
pub fn inner(x: &BallPoint, y: &BallPoint) -> Result<Complex64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    Ok(inner_raw(x.coords(), y.coords()))
}

/// Pseudohyperbolic distance on the unit disk, `|(z - w)/(1 - conj(z) w)|`.
pub fn rho_disk(z: Complex64, w: Complex64) -> Result<f64> {
    for v in [z, w] {
        if v.norm() >= 1.0 {
            return Err(Error::OutsideDisk(v.norm()));
        }
    }
    Ok(((z - w) / (Complex64::new(1.0, 0.0) - z.conj() * w)).norm())
}

/// Pseudohyperbolic distance on the ball through the closed form
/// `rho^2 = 1 - (1 - ||x||^2)(1 - ||y||^2) / |1 - <x,y>|^2`.
///
/// Agrees with `||phi_y(x)||` computed by the automorphism route; the
/// closed form is preferred because it avoids compounding error. For
/// close pairs the equivalent numerator `||x - y||^2 - (r^2 s^2 - |p|^2)`
/// is used instead: the `1 - q` form would cancel half the digits once
/// `rho^2` drops below the rounding scale of `q`.
pub fn rho_ball(x: &BallPoint, y: &BallPoint) -> Result<f64> {
    let p = inner(x, y)?;
    let denom = (Complex64::new(1.0, 0.0) - p).norm_sqr();
    let q = (1.0 - x.norm() * x.norm()) * (1.0 - y.norm() * y.norm()) / denom;
    if q > 0.5 {
        let a = (x.coords() - y.coords()).norm_squared();
        // nonnegative by Cauchy-Schwarz; rounding may dip below zero
        let b = ((x.norm() * y.norm()).powi(2) - p.norm_sqr()).max(0.0);
        Ok(((a - b) / denom).max(0.0).sqrt())
    } else {
        // rounding can push the radicand a hair below zero when x == y
        Ok((1.0 - q).max(0.0).sqrt())
    }
}

/// Hyperbolic distance `beta = atanh(rho) = (1/2) log((1+rho)/(1-rho))`.
pub fn beta_ball(x: &BallPoint, y: &BallPoint) -> Result<f64> {
    Ok(rho_ball(x, y)?.atanh())
}

/// Largest dilation modulus `(1 + M) / (2 M)` with `M = max(||x||, ||y||)`
/// under which scaling by `z` keeps both points in the ball and the
/// scaling ratio stays below two.
pub fn z_bound(x: &BallPoint, y: &BallPoint) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    let m = x.norm().max(y.norm());
    if m == 0.0 {
        return Err(Error::InvalidArgument(
            "z_bound is undefined for x = y = 0".into(),
        ));
    }
    Ok((1.0 + m) / (2.0 * m))
}

/// A dilation probe: a scalar `z` and a pair of distinct points whose
/// scalings `z x`, `z y` stay strictly inside the ball.
#[derive(Debug, Clone)]
pub struct RatioProbe {
    z: Complex64,
    x: BallPoint,
    y: BallPoint,
    zx: BallPoint,
    zy: BallPoint,
}

impl RatioProbe {
    pub fn new(z: Complex64, x: BallPoint, y: BallPoint) -> Result<Self> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch(x.dim(), y.dim()));
        }
        if z.norm() == 0.0 {
            return Err(Error::InvalidArgument("probe requires z != 0".into()));
        }
        if rho_ball(&x, &y)? == 0.0 {
            return Err(Error::DegeneratePair(
                "probe requires x != y so that rho(x, y) > 0".into(),
            ));
        }
        let zx = x.scaled(z)?;
        let zy = y.scaled(z)?;
        Ok(Self { z, x, y, zx, zy })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn x(&self) -> &BallPoint {
        &self.x
    }

    pub fn y(&self) -> &BallPoint {
        &self.y
    }

    /// Whether `|z|` satisfies the dilation hypothesis for this pair.
    pub fn within_hypothesis(&self) -> bool {
        match z_bound(&self.x, &self.y) {
            Ok(bound) => self.z.norm() <= bound,
            Err(_) => false,
        }
    }
}

/// The scaling ratio `rho(z x, z y) / (|z| rho(x, y))`.
///
/// Unbounded in general, but at most two whenever `|z|` respects
/// `z_bound`. Contractivity of the self-map `x -> zx` for `|z| <= 1`
/// bounds the un-normalized quotient `rho(zx, zy) / rho(x, y)` by one;
/// dividing by `|z|` can push this ratio all the way up to two.
pub fn scaling_ratio(probe: &RatioProbe) -> f64 {
    let rho_z = rho_ball(&probe.zx, &probe.zy).expect("equal dims by construction");
    let rho = rho_ball(&probe.x, &probe.y).expect("equal dims by construction");
    rho_z / (probe.z.norm() * rho)
}
