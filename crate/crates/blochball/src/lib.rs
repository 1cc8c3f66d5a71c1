//! Hyperbolic geometry of the open unit ball of `C^n`.
//!
//! The crate implements the Mobius automorphisms of the ball, the
//! pseudohyperbolic and hyperbolic metrics, Bloch-function calculus
//! (radial derivative, invariant gradient, the three Bloch semi-norms)
//! and composition-operator diagnostics, together with randomized
//! checkers and adversarial searches that certify the explicit
//! inequalities and constants of the underlying theory.
//!
//! Every checker reports both sides of its inequality; margins, not
//! booleans, are the primary output. All randomness is seeded and all
//! scans are deterministic for a fixed seed, independent of thread count.

pub mod ball;
pub mod c0s;
pub mod holo;
pub mod inequality;
pub mod linalg;
pub mod mobius;
pub mod num;
pub mod numdiff;
pub mod operator;
pub mod report;
pub mod sampling;
pub mod search;
pub mod selfmap;
pub mod seminorm;
pub mod suites;

pub use ball::{beta_ball, rho_ball, rho_disk, scaling_ratio, z_bound, BallPoint, RatioProbe};
pub use mobius::MobiusMap;
pub use selfmap::SelfMap;

use thiserror::Error;

/// Errors produced by constructors and checkers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("point with norm {norm} is not strictly inside the unit ball (max allowed {max})")]
    OutsideBall { norm: f64, max: f64 },
    #[error("scalar with modulus {0} is not strictly inside the unit disk")]
    OutsideDisk(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("degenerate pair: {0}")]
    DegeneratePair(String),
    #[error("right-hand side is outside the Jacobian range (residual {residual:.3e}, threshold {threshold:.3e})")]
    OutsideJacobianRange { residual: f64, threshold: f64 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Default additive tolerance carried by every inequality check.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Points are kept at Euclidean norm at most `1 - BOUNDARY_MARGIN` at
/// construction; the metric formulas degrade like `1/(1 - ||x||^2)` so
/// the margin keeps conditioning bounded.
pub const BOUNDARY_MARGIN: f64 = 1e-9;
