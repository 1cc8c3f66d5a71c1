//! Finite model of sup-normed vectors indexed by a finite site set,
//! with the per-site pseudohyperbolic distance and its dilation bound.
//!
//! Every supremum in the sup-norm theory becomes a maximum over sites at
//! finite resolution, which captures the full logical content at desk
//! scale; the vanishing-at-infinity condition is vacuous for finite sets.

use crate::ball::rho_disk;
use crate::holo::Margin;
use crate::num::Complex64;
use crate::{Error, Result};

/// A finite family of disk scalars with its cached sup-norm.
#[derive(Debug, Clone)]
pub struct FiniteC0Vector {
    values: Vec<Complex64>,
    sup_norm: f64,
}

impl FiniteC0Vector {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("need at least one site".into()));
        }
        let sup_norm = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if sup_norm >= 1.0 {
            return Err(Error::OutsideBall {
                norm: sup_norm,
                max: 1.0,
            });
        }
        Ok(Self { values, sup_norm })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn sites(&self) -> usize {
        self.values.len()
    }

    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    pub fn scaled(&self, z: Complex64) -> Result<Self> {
        Self::new(self.values.iter().map(|v| v * z).collect())
    }
}

/// Sup over sites of the disk distance, the pseudohyperbolic distance of
/// the sup-norm model.
pub fn rho_c0s(x: &FiniteC0Vector, y: &FiniteC0Vector) -> Result<f64> {
    if x.sites() != y.sites() {
        return Err(Error::DimensionMismatch(x.sites(), y.sites()));
    }
    let mut best: f64 = 0.0;
    for (a, b) in x.values().iter().zip(y.values()) {
        best = best.max(rho_disk(*a, *b)?);
    }
    Ok(best)
}

/// Checks `rho(z x, z y) <= 2 |z| rho(x, y)` under the sup-norm dilation
/// hypothesis `|z| <= (1 + M) / (2 M)` with `M = max(||x||, ||y||)`.
pub fn c0s_scaling_check(x: &FiniteC0Vector, y: &FiniteC0Vector, z: Complex64) -> Result<Margin> {
    if x.sites() != y.sites() {
        return Err(Error::DimensionMismatch(x.sites(), y.sites()));
    }
    let m = x.sup_norm().max(y.sup_norm());
    if m > 0.0 && z.norm() > (1.0 + m) / (2.0 * m) {
        return Err(Error::HypothesisViolated(format!(
            "|z| = {} exceeds the sup-norm dilation bound {}",
            z.norm(),
            (1.0 + m) / (2.0 * m)
        )));
    }
    let zx = x.scaled(z)?;
    let zy = y.scaled(z)?;
    Ok(Margin {
        lhs: rho_c0s(&zx, &zy)?,
        rhs: 2.0 * z.norm() * rho_c0s(x, y)?,
    })
}

/// The sup-norm hypothesis implies the per-site disk hypothesis at every
/// site where the value is nonzero (the per-site bound is infinite at
/// zeros, so those sites are skipped).
pub fn hypothesis_propagates(x: &FiniteC0Vector, z: Complex64) -> bool {
    x.values().iter().all(|v| {
        let a = v.norm();
        a == 0.0 || z.norm() <= (1.0 + a) / (2.0 * a)
    })
}
