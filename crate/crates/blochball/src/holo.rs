//! Holomorphic test functions with exact gradients, the radial
//! derivative, the invariant gradient, the dilation map, and the
//! Lipschitz checks built on them.
//!
//! Gradient convention: `grad` is the vector of complex partials, the
//! derivative pairing is `f'(x)(w) = sum_i d_i f(x) w_i`, and the radial
//! derivative is `R f(x) = sum_i x_i d_i f(x)`.

use crate::ball::{beta_ball, rho_ball, BallPoint};
use crate::mobius::MobiusMap;
use crate::num::{inner_raw, CVector, Complex64};
use crate::{Error, Result};

/// The Lipschitz constant of the dilation map with respect to the
/// pseudohyperbolic distance.
pub const DILATION_LIPSCHITZ: f64 = 14.0;

/// The intermediate constant bounding `(1 - ||x||^2) |Rf(x) - Rf(y)|`
/// when `||x|| >= ||y||`.
pub const RADIAL_GAP_CONSTANT: f64 = 12.0;

/// A holomorphic scalar function on the ball with an exact gradient.
///
/// The families are closed under affine combination and pre-composition
/// with automorphisms, and are chosen so that every explicit constant in
/// the certification suites is stressed: the reciprocal and logarithmic
/// kernels approach the extremal behavior of the disk theory, while
/// pre-composed members exercise automorphism invariance.
#[derive(Debug, Clone)]
pub enum HoloFn {
    /// `f(x) = <x, b>`.
    Linear { b: CVector },
    /// `f(x) = 1 / (1 - <x, y>)`.
    Cayley { y: BallPoint },
    /// `f(x) = -log(1 - <x, y>)` (principal branch; `1 - <x, y>` has
    /// positive real part inside the ball, so no cut is crossed).
    LogCayley { y: BallPoint },
    /// `f(x) = prod_i x_i^{p_i}`.
    Monomial { powers: Vec<u32> },
    /// `f(x) = g(phi(x))`.
    Precomposed { inner: Box<HoloFn>, map: MobiusMap },
    /// `f(x) = sum_k c_k f_k(x)`.
    Affine { terms: Vec<(Complex64, HoloFn)> },
}

impl HoloFn {
    pub fn linear(b: CVector) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        Ok(Self::Linear { b })
    }

    pub fn cayley(y: BallPoint) -> Self {
        Self::Cayley { y }
    }

    pub fn log_cayley(y: BallPoint) -> Self {
        Self::LogCayley { y }
    }

    pub fn monomial(powers: Vec<u32>) -> Result<Self> {
        if powers.is_empty() {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        Ok(Self::Monomial { powers })
    }

    pub fn precompose(self, map: MobiusMap) -> Result<Self> {
        if self.dim() != map.dim() {
            return Err(Error::DimensionMismatch(self.dim(), map.dim()));
        }
        Ok(Self::Precomposed {
            inner: Box::new(self),
            map,
        })
    }

    pub fn affine(terms: Vec<(Complex64, HoloFn)>) -> Result<Self> {
        let dim = match terms.first() {
            Some((_, f)) => f.dim(),
            None => return Err(Error::InvalidArgument("empty affine combination".into())),
        };
        if terms.iter().any(|(_, f)| f.dim() != dim) {
            return Err(Error::InvalidArgument(
                "affine terms have mixed dimensions".into(),
            ));
        }
        Ok(Self::Affine { terms })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Linear { b } => b.len(),
            Self::Cayley { y } | Self::LogCayley { y } => y.dim(),
            Self::Monomial { powers } => powers.len(),
            Self::Precomposed { map, .. } => map.dim(),
            Self::Affine { terms } => terms[0].1.dim(),
        }
    }

    pub fn eval(&self, x: &BallPoint) -> Complex64 {
        assert_eq!(x.dim(), self.dim(), "dimension mismatch");
        let one = Complex64::new(1.0, 0.0);
        match self {
            Self::Linear { b } => inner_raw(x.coords(), b),
            Self::Cayley { y } => one / (one - inner_raw(x.coords(), y.coords())),
            Self::LogCayley { y } => -(one - inner_raw(x.coords(), y.coords())).ln(),
            Self::Monomial { powers } => powers
                .iter()
                .zip(x.coords().iter())
                .map(|(&p, &c)| c.powu(p))
                .product(),
            Self::Precomposed { inner, map } => inner.eval(&map.apply(x).expect("dims match")),
            Self::Affine { terms } => terms.iter().map(|(c, f)| c * f.eval(x)).sum(),
        }
    }

    /// Vector of complex partial derivatives at `x`.
    pub fn grad(&self, x: &BallPoint) -> CVector {
        assert_eq!(x.dim(), self.dim(), "dimension mismatch");
        let one = Complex64::new(1.0, 0.0);
        match self {
            Self::Linear { b } => b.map(|c| c.conj()),
            Self::Cayley { y } => {
                let q = one - inner_raw(x.coords(), y.coords());
                y.coords().map(|c| c.conj() / (q * q))
            }
            Self::LogCayley { y } => {
                let q = one - inner_raw(x.coords(), y.coords());
                y.coords().map(|c| c.conj() / q)
            }
            Self::Monomial { powers } => {
                let n = powers.len();
                let mut g = CVector::zeros(n);
                for i in 0..n {
                    if powers[i] == 0 {
                        continue;
                    }
                    let mut term = Complex64::new(f64::from(powers[i]), 0.0)
                        * x.coords()[i].powu(powers[i] - 1);
                    for (j, &p) in powers.iter().enumerate() {
                        if j != i {
                            term *= x.coords()[j].powu(p);
                        }
                    }
                    g[i] = term;
                }
                g
            }
            Self::Precomposed { inner, map } => {
                let image = map.apply(x).expect("dims match");
                // chain rule with the bilinear pairing: grad(g o phi) = J^T grad g
                map.deriv_at(x).transpose() * inner.grad(&image)
            }
            Self::Affine { terms } => {
                let mut g = CVector::zeros(self.dim());
                for (c, f) in terms {
                    g += f.grad(x) * *c;
                }
                g
            }
        }
    }
}

/// Radial derivative `R f(x) = sum_i x_i d_i f(x) = f'(x)(x)`.
pub fn radial_derivative(f: &HoloFn, x: &BallPoint) -> Complex64 {
    x.coords().dot(&f.grad(x))
}

/// Norm of the invariant gradient through the closed form
/// `||grad(f o phi_x)(0)||^2 = (1 - ||x||^2)(||grad f(x)||^2 - |Rf(x)|^2)`.
///
/// The radicand is nonnegative because `|Rf| <= ||x|| ||grad f||`; a
/// negative value beyond rounding noise is an internal error.
pub fn invariant_gradient_norm(f: &HoloFn, x: &BallPoint) -> Result<f64> {
    let g = f.grad(x);
    let gn = g.norm_squared();
    let rf = x.coords().dot(&g).norm_sqr();
    let radicand = (1.0 - x.norm() * x.norm()) * (gn - rf);
    if radicand < -1e-12 * (1.0 + gn) {
        return Err(Error::Internal(format!(
            "invariant gradient radicand {radicand} is negative"
        )));
    }
    Ok(radicand.max(0.0).sqrt())
}

/// The dilation map `x -> (1 - ||x||^2) R f(x)`.
pub fn dilation(f: &HoloFn, x: &BallPoint) -> Complex64 {
    radial_derivative(f, x) * Complex64::new(1.0 - x.norm() * x.norm(), 0.0)
}

/// `|dilation(x) - dilation(y)| - 14 ||f||_I rho(x, y)`, reported against
/// the supplied semi-norm estimate. Nonpositive when the estimate has
/// converged.
pub fn lipschitz_defect(f: &HoloFn, x: &BallPoint, y: &BallPoint, seminorm_i: f64) -> f64 {
    let gap = (dilation(f, x) - dilation(f, y)).norm();
    let rho = rho_ball(x, y).expect("equal dims");
    gap - DILATION_LIPSCHITZ * seminorm_i * rho
}

/// Both sides of an inequality check; the margin is the scientific output.
#[derive(Debug, Clone, Copy)]
pub struct Margin {
    pub lhs: f64,
    pub rhs: f64,
}

impl Margin {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol
    }
}

/// Outcome of the circle-average radial-gap check.
#[derive(Debug, Clone, Copy)]
pub struct CauchyCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub circle_samples: usize,
    pub holds: bool,
}

/// The dilation parameter used by the radial-gap argument:
/// `eps = (1 - ||x||) / (2 ||x||)`.
pub fn eps_choice(x: &BallPoint) -> Result<f64> {
    if x.norm() == 0.0 {
        return Err(Error::InvalidArgument(
            "the eps choice needs a nonzero point".into(),
        ));
    }
    Ok((1.0 - x.norm()) / (2.0 * x.norm()))
}

/// Verifies `|Rf(x) - Rf(y)| <= (1/eps) ||f||_I max_u beta((1+eps u)x,
/// (1+eps u)y)` over the unit circle in `u`.
///
/// The circle is discretized uniformly and the grid is doubled until the
/// maximum stabilizes to 1e-8 (a grid maximum underestimates the true
/// one, so refinement only strengthens the right-hand side).
pub fn cauchy_lemma_check(
    f: &HoloFn,
    x: &BallPoint,
    y: &BallPoint,
    eps: f64,
    circle_samples: usize,
    seminorm_i: f64,
    tol: f64,
) -> Result<CauchyCheck> {
    if eps <= 0.0 || circle_samples < 4 {
        return Err(Error::InvalidArgument(
            "need eps > 0 and at least 4 circle samples".into(),
        ));
    }
    let reach = (1.0 + eps) * x.norm().max(y.norm());
    if reach >= 1.0 - 1e-12 {
        return Err(Error::HypothesisViolated(format!(
            "(1 + eps) max(||x||, ||y||) = {reach} does not stay inside the ball"
        )));
    }

    let beta_max_on = |k: usize| -> f64 {
        let mut best: f64 = 0.0;
        for j in 0..k {
            let theta = std::f64::consts::TAU * (j as f64) / (k as f64);
            let factor = Complex64::new(1.0, 0.0) + Complex64::from_polar(eps, theta);
            let xs = x.scaled(factor).expect("inside by the reach bound");
            let ys = y.scaled(factor).expect("inside by the reach bound");
            best = best.max(beta_ball(&xs, &ys).expect("equal dims"));
        }
        best
    };

    let mut k = circle_samples;
    let mut beta_max = beta_max_on(k);
    while k < 8192 {
        let refined = beta_max_on(2 * k);
        let stable = (refined - beta_max).abs() <= 1e-8;
        k *= 2;
        beta_max = refined;
        if stable {
            break;
        }
    }

    let lhs = (radial_derivative(f, x) - radial_derivative(f, y)).norm();
    let rhs = seminorm_i * beta_max / eps;
    Ok(CauchyCheck {
        lhs,
        rhs,
        circle_samples: k,
        holds: lhs <= rhs + tol,
    })
}

/// Verifies `|f(x) - f(0)| <= ||x|| ||f||_B / (1 - ||x||^2)`.
pub fn growth_bound_check(f: &HoloFn, x: &BallPoint, seminorm_b: f64) -> Margin {
    let origin = BallPoint::origin(x.dim());
    let lhs = (f.eval(x) - f.eval(&origin)).norm();
    let rhs = x.norm() * seminorm_b / (1.0 - x.norm() * x.norm());
    Margin { lhs, rhs }
}

/// The standard certification family for one dimension: every kind is
/// represented and the kernels sit where the extremal behavior lives.
pub fn standard_family(dim: usize, seed: u64) -> Vec<HoloFn> {
    use crate::sampling;
    let mut rng = sampling::rng_for(seed, "family", dim as u64);
    let mut out = Vec::new();

    let b = sampling::random_direction(&mut rng, dim) * Complex64::new(1.5, 0.0);
    out.push(HoloFn::linear(b).expect("dim >= 1"));

    let y_mid = {
        let dir = sampling::random_direction(&mut rng, dim);
        BallPoint::new(dir * Complex64::new(0.6, 0.0)).expect("inside")
    };
    out.push(HoloFn::cayley(y_mid.clone()));

    let y_far = {
        let dir = sampling::random_direction(&mut rng, dim);
        BallPoint::new(dir * Complex64::new(0.95, 0.0)).expect("inside")
    };
    out.push(HoloFn::log_cayley(y_far));

    let mut powers = vec![0u32; dim];
    powers[0] = 2;
    if dim > 1 {
        powers[1] = 1;
    } else {
        powers[0] = 3;
    }
    out.push(HoloFn::monomial(powers).expect("dim >= 1"));

    let center = {
        let dir = sampling::random_direction(&mut rng, dim);
        BallPoint::new(dir * Complex64::new(0.4, 0.0)).expect("inside")
    };
    out.push(
        HoloFn::cayley(y_mid.clone())
            .precompose(MobiusMap::new(center))
            .expect("same dim"),
    );

    let lin = HoloFn::linear(sampling::random_direction(&mut rng, dim)).expect("dim >= 1");
    out.push(
        HoloFn::affine(vec![
            (Complex64::new(0.7, 0.3), lin),
            (Complex64::new(-0.5, 0.0), HoloFn::cayley(y_mid)),
        ])
        .expect("same dim"),
    );

    out
}
