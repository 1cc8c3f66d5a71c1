//! Analytic self-maps of the ball with dense Jacobians.

use crate::ball::BallPoint;
use crate::linalg;
use crate::mobius::MobiusMap;
use crate::num::{CMatrix, CVector, Complex64};
use crate::{Error, Result};

/// An analytic map of the ball into itself, exposing exact values and
/// Jacobians (as dense matrices).
#[derive(Debug, Clone)]
pub enum SelfMap {
    /// A ball automorphism.
    Mobius(MobiusMap),
    /// `x -> z x` with `|z| <= 1`.
    Scalar { z: Complex64, dim: usize },
    /// The planar map `(z, w) -> (z sin t, cos t)` with `t` in `(0, pi/2)`;
    /// its weighted-derivative bound is attained with equality at the origin.
    Kalaj { t: f64 },
    /// `x -> U x` for a unitary matrix.
    Unitary(CMatrix),
    /// Composition, applied left to right.
    Composition(Vec<SelfMap>),
}

impl SelfMap {
    pub fn scalar(z: Complex64, dim: usize) -> Result<Self> {
        if z.norm() > 1.0 {
            return Err(Error::InvalidArgument(format!(
                "scalar self-map requires |z| <= 1, got {}",
                z.norm()
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        Ok(Self::Scalar { z, dim })
    }

    pub fn kalaj(t: f64) -> Result<Self> {
        if !(t > 0.0 && t < std::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidArgument(format!(
                "kalaj map requires t in (0, pi/2), got {t}"
            )));
        }
        Ok(Self::Kalaj { t })
    }

    pub fn unitary(u: CMatrix) -> Result<Self> {
        if !linalg::is_unitary(&u, 1e-10) {
            return Err(Error::InvalidArgument("matrix is not unitary".into()));
        }
        Ok(Self::Unitary(u))
    }

    pub fn composition(maps: Vec<SelfMap>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidArgument("empty composition".into()));
        }
        let dim = maps[0].dim();
        if maps.iter().any(|m| m.dim() != dim) {
            return Err(Error::InvalidArgument(
                "composition members have mixed dimensions".into(),
            ));
        }
        Ok(Self::Composition(maps))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Mobius(m) => m.dim(),
            Self::Scalar { dim, .. } => *dim,
            Self::Kalaj { .. } => 2,
            Self::Unitary(u) => u.nrows(),
            Self::Composition(maps) => maps[0].dim(),
        }
    }

    pub fn apply(&self, x: &BallPoint) -> BallPoint {
        assert_eq!(x.dim(), self.dim(), "dimension mismatch");
        match self {
            Self::Mobius(m) => m.apply(x).expect("dims checked"),
            Self::Scalar { z, .. } => {
                BallPoint::from_map_output(x.coords().map(|c| c * z))
            }
            Self::Kalaj { t } => {
                let out = CVector::from_vec(vec![
                    x.coords()[0] * Complex64::new(t.sin(), 0.0),
                    Complex64::new(t.cos(), 0.0),
                ]);
                BallPoint::from_map_output(out)
            }
            Self::Unitary(u) => BallPoint::from_map_output(u * x.coords()),
            Self::Composition(maps) => {
                let mut cur = x.clone();
                for m in maps {
                    cur = m.apply(&cur);
                }
                cur
            }
        }
    }

    /// Complex Jacobian at `x`, rows indexed by output components.
    pub fn jacobian(&self, x: &BallPoint) -> CMatrix {
        assert_eq!(x.dim(), self.dim(), "dimension mismatch");
        match self {
            Self::Mobius(m) => m.deriv_at(x),
            Self::Scalar { z, dim } => CMatrix::identity(*dim, *dim) * *z,
            Self::Kalaj { t } => {
                let mut j = CMatrix::zeros(2, 2);
                j[(0, 0)] = Complex64::new(t.sin(), 0.0);
                j
            }
            Self::Unitary(u) => u.clone(),
            Self::Composition(maps) => {
                let mut cur = x.clone();
                let mut j = CMatrix::identity(self.dim(), self.dim());
                for m in maps {
                    j = m.jacobian(&cur) * j;
                    cur = m.apply(&cur);
                }
                j
            }
        }
    }

    /// Operator norm of the Jacobian. Trivial kinds have exact values;
    /// the rest fall back to the largest singular value.
    pub fn jacobian_norm(&self, x: &BallPoint) -> f64 {
        match self {
            Self::Scalar { z, .. } => z.norm(),
            Self::Kalaj { t } => t.sin(),
            Self::Unitary(_) => 1.0,
            _ => linalg::operator_norm(&self.jacobian(x)),
        }
    }

    /// Parses a map description of the form `mobius:a=0.3,0.1`,
    /// `scalar:0.5` (or `scalar:re,im@dim`), or `kalaj:t=0.7`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("map spec '{spec}' has no ':'")))?;
        let bad = |msg: &str| Error::InvalidArgument(format!("map spec '{spec}': {msg}"));
        match kind {
            "mobius" => {
                let coords = rest
                    .strip_prefix("a=")
                    .ok_or_else(|| bad("expected mobius:a=<coords>"))?;
                let vals = parse_reals(coords).map_err(|m| bad(&m))?;
                if vals.is_empty() {
                    return Err(bad("center needs at least one coordinate"));
                }
                let center = BallPoint::from_real(&vals)?;
                Ok(Self::Mobius(MobiusMap::new(center)))
            }
            "scalar" => {
                let (value, dim) = match rest.split_once('@') {
                    Some((v, d)) => (
                        v,
                        d.parse::<usize>().map_err(|_| bad("bad dimension"))?,
                    ),
                    None => (rest, 2),
                };
                let parts = parse_reals(value).map_err(|m| bad(&m))?;
                let z = match parts.as_slice() {
                    [re] => Complex64::new(*re, 0.0),
                    [re, im] => Complex64::new(*re, *im),
                    _ => return Err(bad("expected scalar:<re> or scalar:<re>,<im>")),
                };
                Self::scalar(z, dim)
            }
            "kalaj" => {
                let t = rest
                    .strip_prefix("t=")
                    .ok_or_else(|| bad("expected kalaj:t=<value>"))?
                    .parse::<f64>()
                    .map_err(|_| bad("bad t value"))?;
                Self::kalaj(t)
            }
            other => Err(bad(&format!("unknown map kind '{other}'"))),
        }
    }
}

fn parse_reals(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot parse '{p}' as a real number"))
        })
        .collect()
}
