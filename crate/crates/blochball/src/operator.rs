//! Composition-operator diagnostics: the weighted Jacobian quotients,
//! the sharp derivative bound, bounded-below condition scanners, and the
//! finite-section interpolation experiments.

use crate::ball::{rho_ball, BallPoint};
use crate::holo::{dilation, HoloFn, Margin, DILATION_LIPSCHITZ};
use crate::linalg;
use crate::num::{CMatrix, CVector, Complex64};
use crate::sampling;
use crate::search;
use crate::selfmap::SelfMap;
use crate::seminorm::{self, SampleBudget, SeminormKind};
use crate::{Error, Result};

/// `tau_psi(x) = (1 - ||x||^2) / (1 - ||psi(x)||^2) * ||psi'(x)||`.
pub fn tau(psi: &SelfMap, x: &BallPoint) -> f64 {
    let image = psi.apply(x);
    (1.0 - x.norm() * x.norm()) / (1.0 - image.norm() * image.norm()) * psi.jacobian_norm(x)
}

/// `tau~_psi(x) = sqrt(1 - ||x||^2) / (1 - ||psi(x)||^2) * ||psi'(x)||`;
/// dominates `tau_psi` pointwise.
pub fn tau_tilde(psi: &SelfMap, x: &BallPoint) -> f64 {
    let image = psi.apply(x);
    (1.0 - x.norm() * x.norm()).sqrt() / (1.0 - image.norm() * image.norm())
        * psi.jacobian_norm(x)
}

/// The sharp derivative bound
/// `(1 - ||x||^2) / sqrt(1 - ||psi(x)||^2) * ||psi'(x)|| <= 1`.
pub fn kalaj_check(psi: &SelfMap, x: &BallPoint) -> f64 {
    let image = psi.apply(x);
    (1.0 - x.norm() * x.norm()) / (1.0 - image.norm() * image.norm()).sqrt()
        * psi.jacobian_norm(x)
}

/// Solves `psi'(x)(w) = ||psi'(x)|| psi(x)` by minimal-norm least squares.
/// Succeeds exactly when `psi(x)` lies in the Jacobian's range.
pub fn preimage_w(psi: &SelfMap, x: &BallPoint) -> Result<CVector> {
    let image = psi.apply(x);
    if image.norm() == 0.0 {
        return Ok(CVector::zeros(psi.dim()));
    }
    let jac = psi.jacobian(x);
    let rhs = image.coords() * Complex64::new(psi.jacobian_norm(x), 0.0);
    let w = linalg::lstsq_min_norm(&jac, &rhs)?;
    let residual = (&jac * &w - &rhs).norm();
    let threshold = 1e-8 * image.norm();
    if residual > threshold {
        return Err(Error::OutsideJacobianRange {
            residual,
            threshold,
        });
    }
    Ok(w)
}

/// Invariant-gradient norm of `f o psi` at `x` through the chain rule;
/// lets the contraction `||f o psi||_I <= ||f||_I` be checked for maps
/// outside the holomorphic family combinators.
pub fn composed_invariant_gradient_norm(f: &HoloFn, psi: &SelfMap, x: &BallPoint) -> f64 {
    let image = psi.apply(x);
    let g = psi.jacobian(x).transpose() * f.grad(&image);
    let gn = g.norm_squared();
    let rf = x.coords().dot(&g).norm_sqr();
    ((1.0 - x.norm() * x.norm()) * (gn - rf)).max(0.0).sqrt()
}

/// Sampling budget for the witness searches.
#[derive(Debug, Clone)]
pub struct ScanBudget {
    pub x_samples: usize,
    pub refine_iters: usize,
    pub seed: u64,
}

impl Default for ScanBudget {
    fn default() -> Self {
        Self {
            x_samples: 512,
            refine_iters: 80,
            seed: 42,
        }
    }
}

/// Polar grid in the complex line of the first coordinate axis plus
/// random interior points; radius capped at 0.95 to stay clear of the
/// boundary blowup.
pub fn polar_grid(
    dim: usize,
    radii: &[f64],
    angles: usize,
    random_points: usize,
    seed: u64,
) -> Vec<BallPoint> {
    let mut grid = Vec::new();
    for &r in radii {
        for j in 0..angles {
            let theta = std::f64::consts::TAU * (j as f64) / (angles as f64);
            let mut v = CVector::zeros(dim);
            v[0] = Complex64::from_polar(r, theta);
            grid.push(BallPoint::new(v).expect("radius below one"));
        }
    }
    let mut rng = sampling::rng_for(seed, "y-grid", dim as u64);
    let max_r = radii.iter().copied().fold(0.0, f64::max).min(0.95);
    for _ in 0..random_points {
        grid.push(sampling::random_point(&mut rng, dim, max_r.max(0.5)));
    }
    grid
}

/// Per-target record of a bounded-below scan.
#[derive(Debug, Clone)]
pub struct TargetWitness {
    pub y: BallPoint,
    /// Best admissible point found, if the admissible set was reached.
    pub x: Option<BallPoint>,
    pub rho: Option<f64>,
    pub tau: Option<f64>,
    pub tau_tilde: Option<f64>,
    pub preimage_residual: Option<f64>,
    /// Per-target constant `14 (1/(15 A0) - r) eps / ||w||` of the
    /// sufficiency argument; reported, never asserted positive.
    pub k_value: Option<f64>,
}

/// Evidence record for the necessary condition: over points with
/// `tau~ >= eps`, how closely does the image approach each target?
#[derive(Debug, Clone)]
pub struct NecessaryScan {
    pub eps: f64,
    pub r_hat: f64,
    pub witnesses: Vec<TargetWitness>,
    pub empty_targets: usize,
}

fn feasible_search<F>(
    psi: &SelfMap,
    y: &BallPoint,
    budget: &ScanBudget,
    grid_index: u64,
    feasible: F,
) -> Option<BallPoint>
where
    F: Fn(&BallPoint) -> bool + Copy,
{
    let dim = psi.dim();
    let mut rng = sampling::rng_for(budget.seed, "witness-search", grid_index);
    let mut candidates: Vec<BallPoint> = vec![BallPoint::origin(dim), y.clone()];
    for _ in 0..budget.x_samples {
        candidates.push(sampling::random_point(&mut rng, dim, 0.999));
    }
    let score = |x: &BallPoint| rho_ball(&psi.apply(x), y).expect("equal dims");
    let mut best: Option<(f64, BallPoint)> = None;
    for c in &candidates {
        if !feasible(c) {
            continue;
        }
        let s = score(c);
        if best.as_ref().is_none_or(|(b, _)| s < *b) {
            best = Some((s, c.clone()));
        }
    }
    let (mut best_rho, mut best_x) = best?;

    // Newton refinement toward psi(x) = y; kept only if it stays admissible.
    let refined = search::refine_preimage(psi, y, &best_x, budget.refine_iters);
    if feasible(&refined) {
        let s = score(&refined);
        if s < best_rho {
            best_rho = s;
            best_x = refined;
        }
    }

    // admissibility-preserving local descent
    let cap = 1.0 - crate::BOUNDARY_MARGIN;
    let obj = |params: &[f64]| score(&search::params_to_point(params, cap));
    let feas = |params: &[f64]| feasible(&search::params_to_point(params, cap));
    let (params, value) = search::minimize_feasible(
        &search::point_to_params(&best_x),
        obj,
        feas,
        budget.refine_iters,
    );
    if value < best_rho {
        best_x = search::params_to_point(&params, cap);
    }
    Some(best_x)
}

/// For each target `y`, approximates the infimum of `rho(psi(x), y)`
/// over sampled `x` with `tau~(x) >= eps`; `r_hat` is the largest of
/// those infima. Values near one are evidence against bounded-below;
/// this is evidence over a grid, never a verdict.
pub fn necessary_scan(
    psi: &SelfMap,
    eps: f64,
    y_grid: &[BallPoint],
    budget: &ScanBudget,
) -> NecessaryScan {
    // tiny slack so that points attaining the threshold exactly are kept
    let feasible = |x: &BallPoint| tau_tilde(psi, x) >= eps - 1e-12;
    let mut witnesses = Vec::with_capacity(y_grid.len());
    let mut r_hat: f64 = 0.0;
    let mut empty = 0;
    for (i, y) in y_grid.iter().enumerate() {
        match feasible_search(psi, y, budget, i as u64, feasible) {
            Some(x) => {
                let rho = rho_ball(&psi.apply(&x), y).expect("equal dims");
                r_hat = r_hat.max(rho);
                witnesses.push(TargetWitness {
                    y: y.clone(),
                    rho: Some(rho),
                    tau: Some(tau(psi, &x)),
                    tau_tilde: Some(tau_tilde(psi, &x)),
                    preimage_residual: preimage_residual(psi, &x),
                    k_value: None,
                    x: Some(x),
                });
            }
            None => {
                empty += 1;
                witnesses.push(TargetWitness {
                    y: y.clone(),
                    x: None,
                    rho: None,
                    tau: None,
                    tau_tilde: None,
                    preimage_residual: None,
                    k_value: None,
                });
            }
        }
    }
    NecessaryScan {
        eps,
        r_hat,
        witnesses,
        empty_targets: empty,
    }
}

fn preimage_residual(psi: &SelfMap, x: &BallPoint) -> Option<f64> {
    let image = psi.apply(x);
    if image.norm() == 0.0 {
        return Some(0.0);
    }
    let jac = psi.jacobian(x);
    let rhs = image.coords() * Complex64::new(psi.jacobian_norm(x), 0.0);
    let w = linalg::lstsq_min_norm(&jac, &rhs).ok()?;
    Some((&jac * &w - &rhs).norm())
}

/// Outcome of the sufficiency search: every target must admit a witness
/// with `rho(psi(x_y), y) < r`, `tau(x_y) > eps`, and a solvable
/// preimage equation.
#[derive(Debug, Clone)]
pub struct SufficientScan {
    pub r: f64,
    pub eps: f64,
    pub success: bool,
    pub witnesses: Vec<TargetWitness>,
    /// Whether `r` clears `1 / (15 A0)` for the supplied estimate.
    pub r_clears_threshold: bool,
    /// Infimum over the grid of the per-target constants; reported only.
    pub k_inf: Option<f64>,
}

pub fn sufficient_scan(
    psi: &SelfMap,
    r: f64,
    eps: f64,
    y_grid: &[BallPoint],
    budget: &ScanBudget,
    a0_estimate: f64,
) -> SufficientScan {
    let feasible = |x: &BallPoint| tau(psi, x) > eps - 1e-12;
    let mut witnesses = Vec::with_capacity(y_grid.len());
    let mut success = true;
    let mut k_inf: Option<f64> = None;
    for (i, y) in y_grid.iter().enumerate() {
        let found = feasible_search(psi, y, budget, i as u64, feasible);
        let mut witness = TargetWitness {
            y: y.clone(),
            x: None,
            rho: None,
            tau: None,
            tau_tilde: None,
            preimage_residual: None,
            k_value: None,
        };
        let mut ok = false;
        if let Some(x) = found {
            let rho = rho_ball(&psi.apply(&x), y).expect("equal dims");
            let tau_x = tau(psi, &x);
            witness.rho = Some(rho);
            witness.tau = Some(tau_x);
            witness.tau_tilde = Some(tau_tilde(psi, &x));
            match preimage_w(psi, &x) {
                Ok(w) => {
                    witness.preimage_residual = preimage_residual(psi, &x);
                    let wn = w.norm();
                    if wn > 0.0 {
                        let k = DILATION_LIPSCHITZ * (1.0 / (15.0 * a0_estimate) - r) * eps / wn;
                        witness.k_value = Some(k);
                        k_inf = Some(k_inf.map_or(k, |cur: f64| cur.min(k)));
                    }
                    ok = rho < r && tau_x > eps;
                }
                Err(Error::OutsideJacobianRange { residual, .. }) => {
                    witness.preimage_residual = Some(residual);
                }
                Err(_) => {}
            }
            witness.x = Some(x);
        }
        success &= ok;
        witnesses.push(witness);
    }
    SufficientScan {
        r,
        eps,
        success,
        witnesses,
        r_clears_threshold: r < 1.0 / (15.0 * a0_estimate),
        k_inf,
    }
}

/// A finite sequence of nonzero interior points with its cached
/// pseudohyperbolic separation.
#[derive(Debug, Clone)]
pub struct InterpSequence {
    points: Vec<BallPoint>,
    separation: Option<f64>,
}

impl InterpSequence {
    pub fn new(points: Vec<BallPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("need at least one point".into()));
        }
        let dim = points[0].dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::InvalidArgument("points have mixed dimensions".into()));
        }
        if points.iter().any(BallPoint::is_origin) {
            return Err(Error::InvalidArgument(
                "interpolation nodes must be nonzero".into(),
            ));
        }
        let mut separation: Option<f64> = None;
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let d = rho_ball(&points[i], &points[j])?;
                separation = Some(separation.map_or(d, |cur: f64| cur.min(d)));
            }
        }
        Ok(Self { points, separation })
    }

    pub fn points(&self) -> &[BallPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }
}

/// Minimal pairwise pseudohyperbolic distance; duplicates yield zero.
pub fn interp_separation(seq: &InterpSequence) -> Result<f64> {
    seq.separation.ok_or_else(|| {
        Error::InvalidArgument("separation needs at least two points".into())
    })
}

/// Matrix of the dilation functionals against a basis: entry `(i, j)` is
/// `(1 - ||x_i||^2) R f_j(x_i)`. A positive smallest singular value
/// certifies surjectivity of the finite section.
#[derive(Debug, Clone)]
pub struct FiniteSection {
    pub matrix: CMatrix,
    pub sigma_min: f64,
}

pub fn finite_section(seq: &InterpSequence, basis: &[HoloFn]) -> Result<FiniteSection> {
    if basis.len() < seq.len() {
        return Err(Error::InvalidArgument(format!(
            "need at least as many basis functions ({}) as points ({})",
            basis.len(),
            seq.len()
        )));
    }
    if basis.iter().any(|f| f.dim() != seq.dim()) {
        return Err(Error::DimensionMismatch(basis[0].dim(), seq.dim()));
    }
    let rows = seq.len();
    let cols = basis.len();
    let mut matrix = CMatrix::zeros(rows, cols);
    for (i, x) in seq.points().iter().enumerate() {
        for (j, f) in basis.iter().enumerate() {
            matrix[(i, j)] = dilation(f, x);
        }
    }
    let sigma_min = linalg::sigma_min(&matrix);
    Ok(FiniteSection { matrix, sigma_min })
}

/// Row-wise dilation-difference bounds for a perturbed node sequence.
#[derive(Debug, Clone)]
pub struct PerturbationCheck {
    /// Sup over nodes of `rho(x_n, y_n)`.
    pub delta_hat: f64,
    /// Per basis function: worst row gap, its bound `14 ||f||_I delta`,
    /// and the estimated semi-norms used.
    pub rows: Vec<PerturbationRow>,
    pub sigma_min_base: f64,
    pub sigma_min_perturbed: f64,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct PerturbationRow {
    pub margin: Margin,
    pub norm_i: f64,
    pub norm_r: f64,
    /// The equivalence-constant form `14 A0 delta ||f||_R`, reported for
    /// comparison with the asserted invariant-norm form.
    pub bound_via_a0: f64,
}

pub fn perturbation_check(
    seq: &InterpSequence,
    perturbed: &InterpSequence,
    basis: &[HoloFn],
    budget: &SampleBudget,
    a0_estimate: f64,
    tol: f64,
) -> Result<PerturbationCheck> {
    if seq.len() != perturbed.len() {
        return Err(Error::DimensionMismatch(seq.len(), perturbed.len()));
    }
    let mut delta_hat: f64 = 0.0;
    for (x, y) in seq.points().iter().zip(perturbed.points()) {
        delta_hat = delta_hat.max(rho_ball(x, y)?);
    }
    let mut rows = Vec::with_capacity(basis.len());
    let mut ok = true;
    for f in basis {
        let ests = seminorm::seminorms(
            f,
            &[SeminormKind::Invariant, SeminormKind::WeightedRadial],
            budget,
        );
        let norm_i = ests[0].value;
        let norm_r = ests[1].value;
        let mut worst: f64 = 0.0;
        for (x, y) in seq.points().iter().zip(perturbed.points()) {
            worst = worst.max((dilation(f, x) - dilation(f, y)).norm());
        }
        let margin = Margin {
            lhs: worst,
            rhs: DILATION_LIPSCHITZ * norm_i * delta_hat,
        };
        ok &= margin.holds(tol);
        rows.push(PerturbationRow {
            margin,
            norm_i,
            norm_r,
            bound_via_a0: DILATION_LIPSCHITZ * a0_estimate * delta_hat * norm_r,
        });
    }
    let base = finite_section(seq, basis)?;
    let pert = finite_section(perturbed, basis)?;
    Ok(PerturbationCheck {
        delta_hat,
        rows,
        sigma_min_base: base.sigma_min,
        sigma_min_perturbed: pert.sigma_min,
        ok,
    })
}
