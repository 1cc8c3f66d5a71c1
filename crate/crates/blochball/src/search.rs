//! Deterministic local search used by the sup-norm estimators, the
//! sharpness scans, and the witness searches.
//!
//! The objectives are smooth in the 2n real coordinates, so projected
//! gradient ascent with a backtracking step plus a coordinate polish is
//! enough; all estimates are declared lower bounds of the true suprema.

use crate::ball::BallPoint;
use crate::num::{CVector, Complex64};
use crate::selfmap::SelfMap;

/// Knobs for the projected ascent.
#[derive(Debug, Clone)]
pub struct AscentOptions {
    pub max_steps: usize,
    pub init_step: f64,
    pub min_step: f64,
    pub fd_step: f64,
}

impl Default for AscentOptions {
    fn default() -> Self {
        Self {
            max_steps: 400,
            init_step: 0.05,
            min_step: 1e-13,
            fd_step: 1e-6,
        }
    }
}

/// Maximizes `obj` over real parameters with a projection applied after
/// every trial step. Returns the best parameters and value seen.
pub fn maximize_projected<F, P>(
    start: &[f64],
    obj: F,
    project: P,
    opts: &AscentOptions,
) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
    P: Fn(&mut [f64]),
{
    let mut params = start.to_vec();
    project(&mut params);
    let mut best = obj(&params);
    let mut step = opts.init_step;
    let dim = params.len();

    for _ in 0..opts.max_steps {
        if step < opts.min_step {
            break;
        }
        // finite-difference gradient of the projected objective
        let mut grad = vec![0.0; dim];
        let mut gnorm = 0.0;
        for i in 0..dim {
            let mut plus = params.clone();
            plus[i] += opts.fd_step;
            project(&mut plus);
            let mut minus = params.clone();
            minus[i] -= opts.fd_step;
            project(&mut minus);
            grad[i] = (obj(&plus) - obj(&minus)) / (2.0 * opts.fd_step);
            gnorm += grad[i] * grad[i];
        }
        gnorm = gnorm.sqrt();
        if gnorm < 1e-15 {
            break;
        }
        let mut cand = params.clone();
        for i in 0..dim {
            cand[i] += step * grad[i] / gnorm;
        }
        project(&mut cand);
        let v = obj(&cand);
        if v > best {
            params = cand;
            best = v;
            step *= 1.4;
        } else {
            step *= 0.5;
        }
    }

    // coordinate polish with shrinking steps
    let mut h = (opts.init_step * 0.1).max(1e-4);
    while h >= opts.min_step.max(1e-12) {
        let mut improved = false;
        for i in 0..dim {
            for sign in [1.0, -1.0] {
                let mut cand = params.clone();
                cand[i] += sign * h;
                project(&mut cand);
                let v = obj(&cand);
                if v > best {
                    params = cand;
                    best = v;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.3;
        }
    }

    (params, best)
}

/// Minimizes `obj` while keeping every accepted iterate in the feasible
/// set; used for constrained witness searches where the feasible region
/// can be thin (shrinking coordinate proposals, accept only feasible
/// improvements).
pub fn minimize_feasible<F, G>(
    start: &[f64],
    obj: F,
    feasible: G,
    max_rounds: usize,
) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> bool,
{
    let mut params = start.to_vec();
    debug_assert!(feasible(&params), "start must be feasible");
    let mut best = obj(&params);
    let mut h = 0.1;
    for _ in 0..max_rounds {
        if h < 1e-12 {
            break;
        }
        let mut improved = false;
        for i in 0..params.len() {
            for sign in [1.0, -1.0] {
                let mut cand = params.clone();
                cand[i] += sign * h;
                if !feasible(&cand) {
                    continue;
                }
                let v = obj(&cand);
                if v < best {
                    params = cand;
                    best = v;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.4;
        }
    }
    (params, best)
}

/// Flattens a point into interleaved (re, im) parameters.
pub fn point_to_params(p: &BallPoint) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * p.dim());
    for c in p.coords().iter() {
        out.push(c.re);
        out.push(c.im);
    }
    out
}

/// Rebuilds a point from interleaved parameters, rescaling into the ball
/// of radius `max_radius` when necessary. The rescale lands strictly
/// inside the cap so rounding cannot push the norm back over it.
pub fn params_to_point(params: &[f64], max_radius: f64) -> BallPoint {
    let dim = params.len() / 2;
    let mut v = CVector::zeros(dim);
    for i in 0..dim {
        v[i] = Complex64::new(params[2 * i], params[2 * i + 1]);
    }
    let n = v.norm();
    if n > max_radius {
        v *= Complex64::new(max_radius / n * (1.0 - 1e-12), 0.0);
    }
    BallPoint::new(v).expect("projected inside the ball")
}

/// In-place projection of interleaved parameters into the closed ball of
/// the given radius.
pub fn project_params(params: &mut [f64], max_radius: f64) {
    let mut norm_sq = 0.0;
    for p in params.iter() {
        norm_sq += p * p;
    }
    let n = norm_sq.sqrt();
    if n > max_radius {
        let scale = max_radius / n * (1.0 - 1e-12);
        for p in params.iter_mut() {
            *p *= scale;
        }
    }
}

/// Damped Gauss-Newton refinement of `psi(x) = target`: each step solves
/// the Jacobian least-squares system and backtracks until the Euclidean
/// residual decreases. Returns the final iterate (always inside the ball).
pub fn refine_preimage(
    psi: &SelfMap,
    target: &BallPoint,
    start: &BallPoint,
    max_iter: usize,
) -> BallPoint {
    let cap = 1.0 - crate::BOUNDARY_MARGIN;
    let mut x = start.clone();
    let mut res = (psi.apply(&x).coords() - target.coords()).norm();
    for _ in 0..max_iter {
        if res < 1e-14 {
            break;
        }
        let rhs = target.coords() - psi.apply(&x).coords();
        let Ok(delta) = crate::linalg::lstsq_min_norm(&psi.jacobian(&x), &rhs) else {
            break;
        };
        let mut lambda = 1.0;
        let mut accepted = false;
        while lambda > 1e-8 {
            let mut cand = x.coords() + &delta * Complex64::new(lambda, 0.0);
            let n = cand.norm();
            if n > cap {
                cand *= Complex64::new(cap / n * (1.0 - 1e-12), 0.0);
            }
            let cand = BallPoint::new(cand).expect("capped inside the ball");
            let cand_res = (psi.apply(&cand).coords() - target.coords()).norm();
            if cand_res < res {
                x = cand;
                res = cand_res;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    x
}
