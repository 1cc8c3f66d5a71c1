//! Certification suites: randomized scans, adversarial searches, and
//! report assembly for every asserted inequality.
//!
//! Sample counts scale with the configured budget; pinned tolerances are
//! module constants. Scans run in seeded batches, so reports are
//! byte-identical for a fixed configuration regardless of thread count.

use crate::ball::{beta_ball, rho_ball, rho_disk, z_bound, BallPoint};
use crate::c0s::{c0s_scaling_check, hypothesis_propagates, rho_c0s, FiniteC0Vector};
use crate::holo::{
    cauchy_lemma_check, dilation, eps_choice, growth_bound_check, invariant_gradient_norm,
    lipschitz_defect, radial_derivative, standard_family, HoloFn, DILATION_LIPSCHITZ,
    RADIAL_GAP_CONSTANT,
};
use crate::inequality::{
    counterexample, lemma1_check, lemma2_value, maxfun, norm_extension_refuted, theorem_scan,
};
use crate::linalg;
use crate::mobius::{inv_deriv0_norm_sq, quotient_bc, MobiusMap};
use crate::num::{cplx, CVector, Complex64};
use crate::operator::{
    self, composed_invariant_gradient_norm, finite_section, interp_separation, kalaj_check,
    necessary_scan, polar_grid, preimage_w, sufficient_scan, tau, tau_tilde, InterpSequence,
    ScanBudget,
};
use crate::report::{
    complex_json, point_json, probe_json, Assertion, Report, RunConfig,
};
use crate::sampling::{self, batched, random_direction, random_point};
use crate::search;
use crate::selfmap::SelfMap;
use crate::seminorm::{seminorm, seminorms_rbi, SampleBudget, SeminormKind};
use crate::{Error, Result, BOUNDARY_MARGIN};
use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

// Pinned agreement tolerances. Randomized inequality checks use the
// configured additive tolerance instead.
const METRIC_AGREEMENT_TOL: f64 = 1e-10;
const INVOLUTION_TOL: f64 = 1e-10;
const DERIVATIVE_IDENTITY_TOL: f64 = 1e-9;
const SYMMETRY_TOL: f64 = 1e-12;
const CONTRACTIVITY_TOL: f64 = 1e-12;
const SHARPNESS_FLOOR: f64 = 1.95;
const LEMMA2_ASCENT_FLOOR: f64 = 3.9;
const COUNTEREXAMPLE_REL_TOL: f64 = 1e-8;
const MAXFUN_FLOOR: f64 = 1e-12;
const TWO_ROUTE_REL_TOL: f64 = 0.01;
const CHAIN_TOL: f64 = 1e-6;
const CAYLEY_REL_TOL: f64 = 0.01;
const TAU_MOBIUS_TOL: f64 = 1e-9;
const KALAJ_TOL: f64 = 1e-9;
const SCHWARZ_TOL: f64 = 1e-9;
const BC_EQUALITY_TOL: f64 = 1e-8;
const ESTIMATOR_RATIO_TOL: f64 = 1e-2;
const SECTION_COLLAPSE: f64 = 1e-8;
const WITNESS_DISTANCE_TOL: f64 = 1e-5;

/// Suite knobs derived from the run configuration.
#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub dims: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl SuiteParams {
    pub fn from_config(config: &RunConfig) -> Self {
        Self {
            dims: config.dims.clone(),
            samples: config.samples,
            seed: config.seed,
            tol: config.tol,
        }
    }

    /// Pair-based checks run at a tenth of the scan budget.
    fn pair_samples(&self) -> usize {
        (self.samples / 10).max(100)
    }

    fn cert_budget(&self, stream: &str, index: u64) -> SampleBudget {
        SampleBudget {
            samples: 3000,
            ascent_steps: 250,
            restarts: 4,
            seed: sampling::derive_seed(self.seed, sampling::stream_tag(stream), index),
        }
    }
}

pub const SUITE_NAMES: [&str; 7] = [
    "geometry", "scaling", "lipschitz", "c0s", "compose", "interp", "all",
];

/// Runs a named suite and assembles its report.
pub fn run_suite(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let params = SuiteParams::from_config(config);
    let assertions = match config.suite.as_str() {
        "geometry" => suite_geometry(&params),
        "scaling" => suite_scaling(&params),
        "lipschitz" => suite_lipschitz(&params),
        "c0s" => suite_c0s(&params),
        "compose" => suite_compose(&params),
        "interp" => suite_interp(&params),
        "all" => {
            let mut all = suite_geometry(&params);
            all.extend(suite_scaling(&params));
            all.extend(suite_lipschitz(&params));
            all.extend(suite_c0s(&params));
            all.extend(suite_compose(&params));
            all.extend(suite_interp(&params));
            all
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite '{other}' (expected one of {SUITE_NAMES:?})"
            )))
        }
    };
    Ok(Report::new(config.clone(), assertions))
}

struct Worst {
    lhs: f64,
    rhs: f64,
    witness: serde_json::Value,
}

impl Worst {
    fn new() -> Self {
        Self {
            lhs: f64::NEG_INFINITY,
            rhs: f64::INFINITY,
            witness: serde_json::Value::Null,
        }
    }

    /// Keeps the observation with the smallest `rhs - lhs` margin.
    fn observe(&mut self, lhs: f64, rhs: f64, witness: impl Fn() -> serde_json::Value) {
        if self.lhs == f64::NEG_INFINITY || rhs - lhs < self.rhs - self.lhs {
            self.lhs = lhs;
            self.rhs = rhs;
            self.witness = witness();
        }
    }

    fn merge(&mut self, other: Worst) {
        if other.lhs == f64::NEG_INFINITY {
            return;
        }
        self.observe(other.lhs, other.rhs, || other.witness.clone());
    }
}

// ---------------------------------------------------------------------
// geometry
// ---------------------------------------------------------------------

pub fn suite_geometry(p: &SuiteParams) -> Vec<Assertion> {
    let mut out = Vec::new();
    let pairs = p.pair_samples();
    for &dim in &p.dims {
        // closed form against the automorphism route
        let results = batched(pairs, 2048, p.seed, &format!("metric-{dim}"), |mut rng, count| {
            let mut worst = Worst::new();
            let mut violations = 0usize;
            let mut sym = Worst::new();
            for _ in 0..count {
                let x = random_point(&mut rng, dim, 1.0 - BOUNDARY_MARGIN);
                let y = random_point(&mut rng, dim, 1.0 - BOUNDARY_MARGIN);
                let closed = rho_ball(&x, &y).unwrap();
                let auto = MobiusMap::new(y.clone()).apply(&x).unwrap().norm();
                let diff = (closed - auto).abs();
                if diff > METRIC_AGREEMENT_TOL {
                    violations += 1;
                }
                worst.observe(diff, METRIC_AGREEMENT_TOL, || {
                    json!({"x": point_json(&x), "y": point_json(&y), "closed": closed, "automorphism": auto})
                });
                let back = rho_ball(&y, &x).unwrap();
                sym.observe((closed - back).abs(), SYMMETRY_TOL, || {
                    json!({"x": point_json(&x), "y": point_json(&y)})
                });
            }
            (violations, worst, sym)
        });
        let mut worst = Worst::new();
        let mut sym = Worst::new();
        let mut violations = 0;
        for (v, w, s) in results {
            violations += v;
            worst.merge(w);
            sym.merge(s);
        }
        out.push(Assertion::new(
            format!("geometry.metric_consistency.d{dim}"),
            "|rho(x,y) - ||phi_y(x)||| <= 1e-10",
            Some(dim),
            pairs,
            violations,
            worst.lhs,
            worst.rhs,
            0.0,
            json!({"worst": worst.witness, "seed": p.seed}),
        ));
        out.push(Assertion::new(
            format!("geometry.symmetry.d{dim}"),
            "|rho(x,y) - rho(y,x)| <= 1e-12",
            Some(dim),
            pairs,
            usize::from(sym.lhs > SYMMETRY_TOL),
            sym.lhs,
            sym.rhs,
            0.0,
            json!({"worst": sym.witness}),
        ));

        // involution and the derivative identity
        let results = batched(pairs, 2048, p.seed, &format!("involution-{dim}"), |mut rng, count| {
            let mut worst = Worst::new();
            let mut violations = 0usize;
            for _ in 0..count {
                let a = random_point(&mut rng, dim, 1.0 - BOUNDARY_MARGIN);
                let y = random_point(&mut rng, dim, 1.0 - BOUNDARY_MARGIN);
                let phi = MobiusMap::new(a.clone());
                let round = phi.apply(&phi.apply(&y).unwrap()).unwrap();
                let err = (round.coords() - y.coords()).norm();
                if err > INVOLUTION_TOL {
                    violations += 1;
                }
                worst.observe(err, INVOLUTION_TOL, || {
                    json!({"a": point_json(&a), "y": point_json(&y)})
                });
            }
            (violations, worst)
        });
        let mut worst = Worst::new();
        let mut violations = 0;
        for (v, w) in results {
            violations += v;
            worst.merge(w);
        }
        out.push(Assertion::new(
            format!("geometry.involution.d{dim}"),
            "||phi_a(phi_a(y)) - y|| <= 1e-10",
            Some(dim),
            pairs,
            violations,
            worst.lhs,
            worst.rhs,
            0.0,
            json!({"worst": worst.witness, "seed": p.seed}),
        ));

        let deriv_samples = 200.min(pairs);
        let mut rng = sampling::rng_for(p.seed, "deriv-identity", dim as u64);
        let mut worst = Worst::new();
        let mut violations = 0;
        for _ in 0..deriv_samples {
            let a = random_point(&mut rng, dim, 0.999);
            let phi = MobiusMap::new(a.clone());
            let prod = phi.deriv_at(&a) * phi.deriv0();
            let id = crate::num::CMatrix::identity(dim, dim);
            let err = linalg::max_abs_entry(&(prod - id));
            if err > DERIVATIVE_IDENTITY_TOL {
                violations += 1;
            }
            worst.observe(err, DERIVATIVE_IDENTITY_TOL, || json!({"a": point_json(&a)}));
        }
        out.push(Assertion::new(
            format!("geometry.derivative_identity.d{dim}"),
            "phi_a'(a) o phi_a'(0) = Id to 1e-9",
            Some(dim),
            deriv_samples,
            violations,
            worst.lhs,
            worst.rhs,
            0.0,
            json!({"worst": worst.witness}),
        ));

        // contractivity of the analytic self-map x -> zx for |z| <= 1:
        // rho(zx, zy) <= rho(x, y) (the |z|-normalized ratio is NOT
        // bounded by one; that is the whole point of the dilation bound)
        let results = batched(pairs, 2048, p.seed, &format!("contractivity-{dim}"), |mut rng, count| {
            let mut worst = Worst::new();
            let mut violations = 0usize;
            for _ in 0..count {
                let probe = sampling::random_unit_probe(&mut rng, dim);
                let contracted = rho_ball(
                    &probe.x().scaled(probe.z()).unwrap(),
                    &probe.y().scaled(probe.z()).unwrap(),
                )
                .unwrap();
                let original = rho_ball(probe.x(), probe.y()).unwrap();
                if contracted > original + CONTRACTIVITY_TOL {
                    violations += 1;
                }
                worst.observe(contracted, original, || probe_json(&probe));
            }
            (violations, worst)
        });
        let mut worst = Worst::new();
        let mut violations = 0;
        for (v, w) in results {
            violations += v;
            worst.merge(w);
        }
        out.push(Assertion::new(
            format!("geometry.contractivity.d{dim}"),
            "rho(zx, zy) <= rho(x, y) for |z| <= 1",
            Some(dim),
            pairs,
            violations,
            worst.lhs,
            worst.rhs,
            CONTRACTIVITY_TOL,
            json!({"worst": worst.witness, "seed": p.seed}),
        ));
    }

    // the metric is not positively homogeneous
    let witness = norm_extension_refuted(p.seed);
    let rho_z = rho_ball(
        &witness.x().scaled(witness.z()).unwrap(),
        &witness.y().scaled(witness.z()).unwrap(),
    )
    .unwrap();
    let homogeneous = witness.z().norm() * rho_ball(witness.x(), witness.y()).unwrap();
    out.push(Assertion::new(
        "geometry.non_homogeneity",
        "a probe exists with |rho(zx,zy) - |z| rho(x,y)| > 0.1",
        None,
        1,
        0,
        0.1,
        (rho_z - homogeneous).abs(),
        0.0,
        probe_json(&witness),
    ));
    out
}

// ---------------------------------------------------------------------
// scaling
// ---------------------------------------------------------------------

pub fn suite_scaling(p: &SuiteParams) -> Vec<Assertion> {
    let mut out = Vec::new();
    for &dim in &p.dims {
        let scan = theorem_scan(dim, p.samples, p.seed, p.tol);
        let scan_meta = json!({
            "dimension": dim,
            "samples": scan.samples,
            "violations": scan.violations,
            "seed": p.seed,
            "sharpness_witness": probe_json(&scan.sharpness.witness),
        });
        out.push(Assertion::new(
            format!("scaling.bound.d{dim}"),
            "rho(zx,zy) <= 2 |z| rho(x,y) under the dilation hypothesis",
            Some(dim),
            scan.samples,
            scan.violations,
            scan.worst_ratio,
            2.0,
            p.tol,
            json!({
                "worst_probe": scan.worst_probe.as_ref().map(probe_json),
                "scan": scan_meta,
            }),
        ));
        out.push(Assertion::new(
            format!("scaling.sharpness.d{dim}"),
            "local ascent attains a ratio of at least 1.95",
            Some(dim),
            scan.sharpness.iterations,
            0,
            SHARPNESS_FLOOR,
            scan.sharpness.best_ratio,
            0.0,
            probe_json(&scan.sharpness.witness),
        ));
        out.push(Assertion::new(
            format!("scaling.sharpness_bound.d{dim}"),
            "the sharpness search never exceeds the bound of two",
            Some(dim),
            scan.sharpness.iterations,
            0,
            scan.sharpness.best_ratio,
            2.0,
            1e-9,
            probe_json(&scan.sharpness.witness),
        ));

        // scalar lemma feeding the theorem
        let results = batched(p.samples, 4096, p.seed, &format!("lemma1-{dim}"), |mut rng, count| {
            let mut worst = Worst::new();
            let mut violations = 0usize;
            for _ in 0..count {
                let (x, y) = sampling::random_pair(&mut rng, dim, 1.0 - BOUNDARY_MARGIN);
                let bound = z_bound(&x, &y).unwrap();
                let z = sampling::random_disk_scalar(&mut rng, bound);
                let m = lemma1_check(&x, &y, z).unwrap();
                if !m.holds(p.tol) {
                    violations += 1;
                }
                worst.observe(m.lhs, m.rhs, || {
                    json!({"x": point_json(&x), "y": point_json(&y), "z": complex_json(z)})
                });
            }
            (violations, worst)
        });
        let mut worst = Worst::new();
        let mut violations = 0;
        for (v, w) in results {
            violations += v;
            worst.merge(w);
        }
        out.push(Assertion::new(
            format!("scaling.lemma1.d{dim}"),
            "|1 - p| <= 2 |1 - |z|^2 p| under the dilation hypothesis",
            Some(dim),
            p.samples,
            violations,
            worst.lhs,
            worst.rhs,
            p.tol,
            json!({"worst": worst.witness, "seed": p.seed}),
        ));

        let results = batched(p.samples, 4096, p.seed, &format!("lemma2-{dim}"), |mut rng, count| {
            let mut worst = Worst::new();
            let mut violations = 0usize;
            let mut best_pair: Option<(f64, BallPoint, BallPoint)> = None;
            for _ in 0..count {
                let (x, y) = sampling::random_pair(&mut rng, dim, 1.0 - BOUNDARY_MARGIN);
                let Ok(v) = lemma2_value(&x, &y) else { continue };
                if v > 4.0 + p.tol {
                    violations += 1;
                }
                worst.observe(v, 4.0, || {
                    json!({"x": point_json(&x), "y": point_json(&y)})
                });
                if best_pair.as_ref().is_none_or(|(b, _, _)| v > *b) {
                    best_pair = Some((v, x, y));
                }
            }
            (violations, worst, best_pair)
        });
        let mut worst = Worst::new();
        let mut violations = 0;
        let mut best_pair: Option<(f64, BallPoint, BallPoint)> = None;
        for (v, w, b) in results {
            violations += v;
            worst.merge(w);
            if let Some((val, x, y)) = b {
                if best_pair.as_ref().is_none_or(|(cur, _, _)| val > *cur) {
                    best_pair = Some((val, x, y));
                }
            }
        }
        out.push(Assertion::new(
            format!("scaling.lemma2.d{dim}"),
            "A |1 - p|^2 / (A - B) <= 4",
            Some(dim),
            p.samples,
            violations,
            worst.lhs,
            worst.rhs,
            p.tol,
            json!({"worst": worst.witness, "seed": p.seed}),
        ));

        if dim == p.dims[0] {
            // sharpness of the constant four by ascent from the best draw
            let (vb, xb, yb) = best_pair.expect("at least one nondegenerate pair");
            let start: Vec<f64> = search::point_to_params(&xb)
                .into_iter()
                .chain(search::point_to_params(&yb))
                .collect();
            let obj = |params: &[f64]| {
                let half = params.len() / 2;
                let x = search::params_to_point(&params[..half], 0.9999);
                let y = search::params_to_point(&params[half..], 0.9999);
                lemma2_value(&x, &y).unwrap_or(-1.0)
            };
            let project = |params: &mut [f64]| {
                let half = params.len() / 2;
                search::project_params(&mut params[..half], 0.9999);
                search::project_params(&mut params[half..], 0.9999);
            };
            let (_, sup) = search::maximize_projected(
                &start,
                obj,
                project,
                &search::AscentOptions {
                    max_steps: 600,
                    ..Default::default()
                },
            );
            out.push(Assertion::new(
                format!("scaling.lemma2_sharpness.d{dim}"),
                "ascent drives A |1 - p|^2 / (A - B) above 3.9",
                Some(dim),
                p.samples,
                0,
                LEMMA2_ASCENT_FLOOR,
                sup.max(vb),
                0.0,
                json!({"start_value": vb, "ascended": sup}),
            ));
        }
    }

    // simplex polynomial: dense grid plus random points
    let grid_n = 100usize;
    let mut min_val = f64::INFINITY;
    let mut argmin = (0.0, 0.0, 0.0);
    for i in 0..grid_n {
        let a = i as f64 / (grid_n - 1) as f64;
        for j in 0..=i {
            let b = j as f64 / (grid_n - 1) as f64;
            for k in 0..=j {
                let c = k as f64 / (grid_n - 1) as f64;
                let v = maxfun(a, b, c).unwrap();
                if v < min_val {
                    min_val = v;
                    argmin = (a, b, c);
                }
            }
        }
    }
    let mut rng = sampling::rng_for(p.seed, "maxfun", 0);
    let random_points = p.samples.min(100_000);
    for _ in 0..random_points {
        use rand::Rng;
        let mut vals = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let v = maxfun(vals[0], vals[1], vals[2]).unwrap();
        if v < min_val {
            min_val = v;
            argmin = (vals[0], vals[1], vals[2]);
        }
    }
    out.push(Assertion::new(
        "scaling.maxfun",
        "(3 - b^2)(a - c) - (a^2 - b^2)(2 - c) >= -1e-12 on the ordered simplex",
        None,
        grid_n * grid_n * grid_n / 6 + random_points,
        usize::from(min_val < -MAXFUN_FLOOR),
        -min_val,
        MAXFUN_FLOOR,
        0.0,
        json!({"min": min_val, "argmin": [argmin.0, argmin.1, argmin.2]}),
    ));

    // the unbounded two-route sequence
    let n_max = 10_000u64;
    let mut worst_rel = 0.0f64;
    let mut worst_n = 0u64;
    let mut prev = 0.0f64;
    let mut monotone_violations = 0usize;
    let mut ratio_100 = 0.0;
    for n in 1..=n_max {
        let c = counterexample(n).unwrap();
        let rel = (c.ratio_formula - c.ratio_direct).abs() / c.ratio_formula;
        if rel > worst_rel {
            worst_rel = rel;
            worst_n = n;
        }
        if n >= 2 && c.ratio_formula < prev {
            monotone_violations += 1;
        }
        if n >= 2 {
            prev = c.ratio_formula;
        }
        if n == 100 {
            ratio_100 = c.ratio_direct;
        }
    }
    out.push(Assertion::new(
        "scaling.counterexample.agreement",
        "closed-form and direct dilation ratios agree to 1e-8 relative for n <= 10^4",
        None,
        n_max as usize,
        usize::from(worst_rel > COUNTEREXAMPLE_REL_TOL),
        worst_rel,
        COUNTEREXAMPLE_REL_TOL,
        0.0,
        json!({"worst_n": worst_n}),
    ));
    out.push(Assertion::new(
        "scaling.counterexample.growth",
        "the dilation ratio exceeds 25 at n = 100",
        None,
        1,
        0,
        25.0,
        ratio_100,
        0.0,
        json!({"ratio_direct": ratio_100}),
    ));
    out.push(Assertion::new(
        "scaling.counterexample.monotone",
        "the closed-form ratio is nondecreasing for n >= 2",
        None,
        n_max as usize - 1,
        monotone_violations,
        0.0,
        0.0,
        0.0,
        serde_json::Value::Null,
    ));
    out
}

// ---------------------------------------------------------------------
// lipschitz
// ---------------------------------------------------------------------

struct CertifiedFn {
    f: HoloFn,
    norm_r: f64,
    norm_b: f64,
    norm_i: f64,
}

fn certified_pool(p: &SuiteParams, dim: usize) -> Vec<CertifiedFn> {
    let family = standard_family(dim, p.seed);
    family
        .into_par_iter()
        .enumerate()
        .map(|(idx, f)| {
            let budget = p.cert_budget("seminorm-pool", (dim * 64 + idx) as u64);
            let [r, b, i] = seminorms_rbi(&f, &budget);
            CertifiedFn {
                f,
                norm_r: r.value,
                norm_b: b.value,
                norm_i: i.value,
            }
        })
        .collect()
}

/// Lower-bound invariant-gradient norm by direct maximization of
/// `|f'(x)(w)| / ||phi_x'(0)^{-1}(w)||` over directions, with the
/// denominator computed through explicit operator inversion so the route
/// is independent of the closed forms.
fn invariant_norm_by_maximization(
    f: &HoloFn,
    x: &BallPoint,
    directions: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> f64 {
    let dim = x.dim();
    let phi = MobiusMap::new(x.clone());
    let inv = linalg::inverse(&phi.deriv0()).expect("deriv0 is invertible");
    let g = f.grad(x);
    let ratio = |w: &CVector| -> f64 {
        let den = (&inv * w).norm();
        if den == 0.0 {
            return 0.0;
        }
        g.dot(w).norm() / den
    };
    let mut best = 0.0f64;
    let mut best_w = CVector::zeros(dim);
    for _ in 0..directions {
        let w = random_direction(rng, dim);
        let v = ratio(&w);
        if v > best {
            best = v;
            best_w = w;
        }
    }
    // local ascent over the direction sphere
    let obj = |params: &[f64]| {
        let mut w = CVector::zeros(dim);
        for i in 0..dim {
            w[i] = cplx(params[2 * i], params[2 * i + 1]);
        }
        if w.norm() < 1e-9 {
            return 0.0;
        }
        ratio(&w)
    };
    let project = |params: &mut [f64]| {
        let mut norm_sq = 0.0;
        for v in params.iter() {
            norm_sq += v * v;
        }
        let n = norm_sq.sqrt();
        if n > 0.0 {
            for v in params.iter_mut() {
                *v /= n;
            }
        }
    };
    let mut start = Vec::with_capacity(2 * dim);
    for c in best_w.iter() {
        start.push(c.re);
        start.push(c.im);
    }
    let (_, ascended) = search::maximize_projected(
        &start,
        obj,
        project,
        &search::AscentOptions {
            max_steps: 120,
            ..Default::default()
        },
    );
    best.max(ascended)
}

pub fn suite_lipschitz(p: &SuiteParams) -> Vec<Assertion> {
    let mut out = Vec::new();
    let pairs = p.pair_samples();
    for &dim in &p.dims {
        let pool = certified_pool(p, dim);

        // one pass of sampled pairs drives the three Lipschitz-type checks
        struct PairWorst {
            defect: Worst,
            radial: Worst,
            beta: Worst,
            violations: [usize; 3],
            max_ratio: f64,
        }
        let per_fn = (pairs / pool.len()).max(50);
        let results: Vec<PairWorst> = pool
            .par_iter()
            .enumerate()
            .map(|(idx, cf)| {
                let mut rng = sampling::rng_for(p.seed, "lipschitz-pairs", (dim * 64 + idx) as u64);
                let mut w = PairWorst {
                    defect: Worst::new(),
                    radial: Worst::new(),
                    beta: Worst::new(),
                    violations: [0; 3],
                    max_ratio: 0.0,
                };
                for _ in 0..per_fn {
                    let (x, y) = sampling::random_pair(&mut rng, dim, 1.0 - BOUNDARY_MARGIN);
                    let rho = rho_ball(&x, &y).unwrap();
                    let gap = (dilation(&cf.f, &x) - dilation(&cf.f, &y)).norm();
                    let defect = lipschitz_defect(&cf.f, &x, &y, cf.norm_i);
                    if defect > p.tol {
                        w.violations[0] += 1;
                    }
                    w.defect.observe(gap, DILATION_LIPSCHITZ * cf.norm_i * rho, || {
                        json!({"fn": idx, "x": point_json(&x), "y": point_json(&y)})
                    });
                    w.max_ratio = w.max_ratio.max(gap / (cf.norm_i * rho));

                    // order so that ||hi|| >= ||lo||
                    let (hi, lo) = if x.norm() >= y.norm() { (&x, &y) } else { (&y, &x) };
                    let radial_gap = (1.0 - hi.norm() * hi.norm())
                        * (radial_derivative(&cf.f, hi) - radial_derivative(&cf.f, lo)).norm();
                    let radial_bound = RADIAL_GAP_CONSTANT * cf.norm_i * rho;
                    if radial_gap > radial_bound + p.tol {
                        w.violations[1] += 1;
                    }
                    w.radial.observe(radial_gap, radial_bound, || {
                        json!({"fn": idx, "x": point_json(hi), "y": point_json(lo)})
                    });

                    let value_gap = (cf.f.eval(&x) - cf.f.eval(&y)).norm();
                    let beta_bound = cf.norm_i * beta_ball(&x, &y).unwrap();
                    if value_gap > beta_bound + p.tol {
                        w.violations[2] += 1;
                    }
                    w.beta.observe(value_gap, beta_bound, || {
                        json!({"fn": idx, "x": point_json(&x), "y": point_json(&y)})
                    });
                }
                w
            })
            .collect();
        let mut defect = Worst::new();
        let mut radial = Worst::new();
        let mut beta = Worst::new();
        let mut violations = [0usize; 3];
        let mut max_ratio = 0.0f64;
        for r in results {
            defect.merge(r.defect);
            radial.merge(r.radial);
            beta.merge(r.beta);
            for (total, v) in violations.iter_mut().zip(r.violations) {
                *total += v;
            }
            max_ratio = max_ratio.max(r.max_ratio);
        }
        let total = per_fn * pool.len();
        out.push(Assertion::new(
            format!("lipschitz.dilation_14.d{dim}"),
            "|dilation(x) - dilation(y)| <= 14 ||f||_I rho(x,y)",
            Some(dim),
            total,
            violations[0],
            defect.lhs,
            defect.rhs,
            p.tol,
            json!({
                "worst": defect.witness,
                "empirical_max_ratio": max_ratio,
                "one_dim_sharp_reference": 3.0 * 3.0_f64.sqrt() / 2.0,
                "seed": p.seed,
            }),
        ));
        out.push(Assertion::new(
            format!("lipschitz.radial_12.d{dim}"),
            "(1 - ||x||^2) |Rf(x) - Rf(y)| <= 12 ||f||_I rho(x,y) for ||x|| >= ||y||",
            Some(dim),
            total,
            violations[1],
            radial.lhs,
            radial.rhs,
            p.tol,
            json!({"worst": radial.witness}),
        ));
        out.push(Assertion::new(
            format!("lipschitz.beta_bound.d{dim}"),
            "|f(x) - f(y)| <= ||f||_I beta(x,y)",
            Some(dim),
            total,
            violations[2],
            beta.lhs,
            beta.rhs,
            p.tol,
            json!({"worst": beta.witness}),
        ));

        // invariant gradient: closed form against direct maximization
        let instances = (1000 / p.dims.len()).max(50);
        let results: Vec<(usize, Worst)> = (0..4usize)
            .into_par_iter()
            .map(|batch| {
                let mut rng = sampling::rng_for(p.seed, "two-route", (dim * 8 + batch) as u64);
                let mut worst = Worst::new();
                let mut violations = 0usize;
                for _ in 0..instances.div_ceil(4) {
                    let idx = (rng.gen::<u64>() % pool.len() as u64) as usize;
                    let f = &pool[idx].f;
                    let x = random_point(&mut rng, dim, 0.95);
                    let closed = invariant_gradient_norm(f, &x).unwrap();
                    if closed < 1e-9 {
                        continue;
                    }
                    let direct = invariant_norm_by_maximization(f, &x, 1000, &mut rng);
                    let rel = (closed - direct).abs() / closed;
                    if rel > TWO_ROUTE_REL_TOL {
                        violations += 1;
                    }
                    worst.observe(rel, TWO_ROUTE_REL_TOL, || {
                        json!({"fn": idx, "x": point_json(&x), "closed": closed, "direct": direct})
                    });
                }
                (violations, worst)
            })
            .collect();
        let mut worst = Worst::new();
        let mut viols = 0;
        for (v, w) in results {
            viols += v;
            worst.merge(w);
        }
        out.push(Assertion::new(
            format!("lipschitz.invariant_two_route.d{dim}"),
            "closed-form invariant gradient matches direct maximization within 1%",
            Some(dim),
            instances,
            viols,
            worst.lhs,
            worst.rhs,
            0.0,
            json!({"worst": worst.witness, "directions": 1000}),
        ));

        // semi-norm chain on shared samples
        let mut chain_worst = 0.0f64;
        for cf in &pool {
            chain_worst = chain_worst.max(cf.norm_r - cf.norm_b).max(cf.norm_b - cf.norm_i);
        }
        out.push(Assertion::new(
            format!("lipschitz.seminorm_chain.d{dim}"),
            "||f||_R <= ||f||_B <= ||f||_I on shared samples",
            Some(dim),
            pool.len(),
            usize::from(chain_worst > CHAIN_TOL),
            chain_worst,
            0.0,
            CHAIN_TOL,
            json!({
                "norms": pool.iter().map(|c| json!({"r": c.norm_r, "b": c.norm_b, "i": c.norm_i})).collect::<Vec<_>>(),
            }),
        ));

        // circle-average and growth bounds on sampled instances
        let mut rng = sampling::rng_for(p.seed, "cauchy-growth", dim as u64);
        let mut cauchy_worst = Worst::new();
        let mut cauchy_violations = 0usize;
        let mut growth_worst = Worst::new();
        let mut growth_violations = 0usize;
        let small_checks = 12usize;
        for _ in 0..small_checks {
            let idx = (rng.gen::<u64>() % pool.len() as u64) as usize;
            let cf = &pool[idx];
            let x = random_point(&mut rng, dim, 0.8);
            let y = random_point(&mut rng, dim, x.norm().max(0.2));
            let (hi, lo) = if x.norm() >= y.norm() { (x.clone(), y) } else { (y, x.clone()) };
            if hi.norm() > 0.0 {
                let eps = eps_choice(&hi).unwrap();
                let c = cauchy_lemma_check(&cf.f, &hi, &lo, eps, 256, cf.norm_i, p.tol).unwrap();
                if !c.holds {
                    cauchy_violations += 1;
                }
                cauchy_worst.observe(c.lhs, c.rhs, || {
                    json!({"fn": idx, "x": point_json(&hi), "y": point_json(&lo), "eps": eps, "circle_samples": c.circle_samples})
                });
            }
            let g = growth_bound_check(&cf.f, &x, cf.norm_b);
            if !g.holds(p.tol) {
                growth_violations += 1;
            }
            growth_worst.observe(g.lhs, g.rhs, || json!({"fn": idx, "x": point_json(&x)}));
            // |dilation| <= ||f||_B ||x||
            let dil = dilation(&cf.f, &x).norm();
            if dil > cf.norm_b * x.norm() + p.tol {
                growth_violations += 1;
            }
        }
        out.push(Assertion::new(
            format!("lipschitz.cauchy_circle.d{dim}"),
            "|Rf(x) - Rf(y)| <= (1/eps) ||f||_I max_u beta((1+eps u)x, (1+eps u)y)",
            Some(dim),
            small_checks,
            cauchy_violations,
            cauchy_worst.lhs,
            cauchy_worst.rhs,
            p.tol,
            json!({"worst": cauchy_worst.witness}),
        ));
        out.push(Assertion::new(
            format!("lipschitz.growth_bound.d{dim}"),
            "|f(x) - f(0)| <= ||x|| ||f||_B / (1 - ||x||^2)",
            Some(dim),
            small_checks,
            growth_violations,
            growth_worst.lhs,
            growth_worst.rhs,
            p.tol,
            json!({"worst": growth_worst.witness}),
        ));

        // reported equivalence-constant estimate over the pool
        let a0 = pool
            .iter()
            .map(|c| c.norm_i / c.norm_r)
            .fold(0.0f64, f64::max);
        out.push(Assertion::new(
            format!("lipschitz.a0_estimate.d{dim}"),
            "estimated max ||f||_I / ||f||_R over the family (reported, not asserted)",
            Some(dim),
            pool.len(),
            0,
            0.0,
            a0,
            0.0,
            json!({"a0_estimate": a0}),
        ));
    }

    // reciprocal-kernel closed form: 20 random centers across dimensions
    let mut rng = sampling::rng_for(p.seed, "cayley-closed-form", 0);
    let mut worst = Worst::new();
    let mut violations = 0usize;
    for k in 0..20 {
        use rand::Rng;
        let dim = p.dims[k % p.dims.len()];
        let r = 0.2 + 0.65 * rng.gen::<f64>();
        let y = BallPoint::new(random_direction(&mut rng, dim) * cplx(r, 0.0)).unwrap();
        let f = HoloFn::cayley(y.clone());
        let expected = y.norm() / (1.0 - y.norm() * y.norm());
        let budget = p.cert_budget("cayley-closed-form", k as u64);
        let est = seminorm(&f, SeminormKind::WeightedGradient, &budget);
        let rel = (est.value - expected).abs() / expected;
        if rel > CAYLEY_REL_TOL {
            violations += 1;
        }
        worst.observe(rel, CAYLEY_REL_TOL, || {
            json!({"y": point_json(&y), "estimated": est.value, "closed_form": expected})
        });
    }
    out.push(Assertion::new(
        "lipschitz.cayley_seminorm",
        "estimated ||f_y||_B is within 1% of ||y|| / (1 - ||y||^2)",
        None,
        20,
        violations,
        worst.lhs,
        worst.rhs,
        0.0,
        json!({"worst": worst.witness}),
    ));
    out
}

// ---------------------------------------------------------------------
// c0s
// ---------------------------------------------------------------------

fn random_c0s_vector(rng: &mut rand_chacha::ChaCha8Rng, sites: usize) -> FiniteC0Vector {
    let values = (0..sites)
        .map(|_| {
            let r = sampling::stratified_radius(rng, 1.0 - BOUNDARY_MARGIN);
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(r, theta)
        })
        .collect();
    FiniteC0Vector::new(values).expect("moduli below one")
}

pub fn suite_c0s(p: &SuiteParams) -> Vec<Assertion> {
    let mut out = Vec::new();
    let sites = 32usize;
    let draws = p.pair_samples();
    let results = batched(draws, 2048, p.seed, "c0s-scaling", |mut rng, count| {
        let mut worst = Worst::new();
        let mut violations = 0usize;
        let mut propagation_failures = 0usize;
        for _ in 0..count {
            let x = random_c0s_vector(&mut rng, sites);
            let y = random_c0s_vector(&mut rng, sites);
            if rho_c0s(&x, &y).unwrap() < sampling::MIN_PAIR_RHO {
                continue;
            }
            let m = x.sup_norm().max(y.sup_norm());
            let bound = (1.0 + m) / (2.0 * m);
            let z = Complex64::from_polar(
                bound * rng.gen::<f64>().sqrt().max(1e-3),
                rng.gen::<f64>() * std::f64::consts::TAU,
            );
            if !hypothesis_propagates(&x, z) {
                propagation_failures += 1;
            }
            let margin = c0s_scaling_check(&x, &y, z).unwrap();
            if !margin.holds(p.tol) {
                violations += 1;
            }
            worst.observe(margin.lhs, margin.rhs, || {
                json!({"z": complex_json(z), "sup_x": x.sup_norm(), "sup_y": y.sup_norm()})
            });
        }
        (violations, propagation_failures, worst)
    });
    let mut worst = Worst::new();
    let mut violations = 0;
    let mut propagation_failures = 0;
    for (v, pf, w) in results {
        violations += v;
        propagation_failures += pf;
        worst.merge(w);
    }
    out.push(Assertion::new(
        "c0s.scaling_bound",
        "rho(zx, zy) <= 2 |z| rho(x, y) for sup-normed vectors under the dilation hypothesis",
        None,
        draws,
        violations,
        worst.lhs,
        worst.rhs,
        p.tol,
        json!({"sites": sites, "worst": worst.witness, "seed": p.seed}),
    ));
    out.push(Assertion::new(
        "c0s.hypothesis_propagation",
        "the sup-norm dilation hypothesis implies the per-site disk hypothesis",
        None,
        draws,
        propagation_failures,
        propagation_failures as f64,
        0.0,
        0.0,
        serde_json::Value::Null,
    ));

    // singleton site set reduces to the disk metric
    let mut rng = sampling::rng_for(p.seed, "c0s-singleton", 0);
    let mut worst_diff = 0.0f64;
    for _ in 0..500 {
        let x = random_c0s_vector(&mut rng, 1);
        let y = random_c0s_vector(&mut rng, 1);
        let via_c0s = rho_c0s(&x, &y).unwrap();
        let via_disk = rho_disk(x.values()[0], y.values()[0]).unwrap();
        worst_diff = worst_diff.max((via_c0s - via_disk).abs());
    }
    out.push(Assertion::new(
        "c0s.singleton_is_disk",
        "a singleton site set reproduces the disk distance",
        None,
        500,
        usize::from(worst_diff > 1e-14),
        worst_diff,
        1e-14,
        0.0,
        serde_json::Value::Null,
    ));
    out
}

// ---------------------------------------------------------------------
// compose
// ---------------------------------------------------------------------

fn selfmap_pool(dim: usize, seed: u64) -> Vec<SelfMap> {
    let mut rng = sampling::rng_for(seed, "selfmap-pool", dim as u64);
    let mut pool = Vec::new();
    let a1 = random_point(&mut rng, dim, 0.7);
    pool.push(SelfMap::Mobius(MobiusMap::new(a1.clone())));
    let a2 = random_point(&mut rng, dim, 0.5);
    pool.push(SelfMap::Mobius(MobiusMap::new(a2)));
    pool.push(SelfMap::scalar(cplx(0.5, 0.0), dim).unwrap());
    pool.push(SelfMap::scalar(cplx(0.3, 0.4), dim).unwrap());
    // a deterministic unitary from the QR factor of a seeded matrix
    let raw = crate::num::CMatrix::from_fn(dim, dim, |_, _| {
        use rand::Rng;
        cplx(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    let q = raw.qr().q();
    if linalg::is_unitary(&q, 1e-10) {
        pool.push(SelfMap::unitary(q).unwrap());
    }
    if dim == 2 {
        pool.push(SelfMap::kalaj(0.7).unwrap());
    }
    pool.push(
        SelfMap::composition(vec![
            SelfMap::Mobius(MobiusMap::new(a1)),
            SelfMap::scalar(cplx(0.8, 0.0), dim).unwrap(),
        ])
        .unwrap(),
    );
    pool
}

pub fn suite_compose(p: &SuiteParams) -> Vec<Assertion> {
    let mut out = Vec::new();
    let draws = p.pair_samples();
    for &dim in &p.dims {
        let pool = selfmap_pool(dim, p.seed);

        // tau of automorphisms stays above one
        let results = batched(draws, 2048, p.seed, &format!("tau-mobius-{dim}"), |mut rng, count| {
            let mut min_tau = f64::INFINITY;
            let mut violations = 0usize;
            let mut witness = serde_json::Value::Null;
            for _ in 0..count {
                let a = random_point(&mut rng, dim, 0.98);
                let x = random_point(&mut rng, dim, 0.98);
                let phi = SelfMap::Mobius(MobiusMap::new(a.clone()));
                let t = tau(&phi, &x);
                if t < 1.0 - TAU_MOBIUS_TOL {
                    violations += 1;
                }
                if t < min_tau {
                    min_tau = t;
                    witness = json!({"a": point_json(&a), "x": point_json(&x)});
                }
            }
            (violations, min_tau, witness)
        });
        let mut min_tau = f64::INFINITY;
        let mut violations = 0;
        let mut witness = serde_json::Value::Null;
        for (v, t, w) in results {
            violations += v;
            if t < min_tau {
                min_tau = t;
                witness = w;
            }
        }
        out.push(Assertion::new(
            format!("compose.tau_automorphism.d{dim}"),
            "tau_{phi_a}(x) >= 1",
            Some(dim),
            draws,
            violations,
            1.0,
            min_tau,
            TAU_MOBIUS_TOL,
            json!({"worst": witness, "seed": p.seed}),
        ));

        // pointwise bounds over the self-map pool
        let results = batched(draws, 2048, p.seed, &format!("compose-pool-{dim}"), |mut rng, count| {
            let mut kalaj_worst = Worst::new();
            let mut schwarz_worst = Worst::new();
            let mut bc_eq_worst = Worst::new();
            let mut tt_worst = Worst::new();
            let mut violations = [0usize; 4];
            for _ in 0..count {
                let psi = &pool[(rng.gen::<u64>() % pool.len() as u64) as usize];
                let x = random_point(&mut rng, dim, 0.95);
                let k = kalaj_check(psi, &x);
                if k > 1.0 + KALAJ_TOL {
                    violations[0] += 1;
                }
                kalaj_worst.observe(k, 1.0, || json!({"x": point_json(&x)}));

                let w = random_direction(&mut rng, dim) * cplx(0.2 + 1.5 * (rng.gen::<u64>() % 97) as f64 / 97.0, 0.0);
                let q = quotient_bc(psi, &x, &w).unwrap();
                if q > 1.0 + SCHWARZ_TOL {
                    violations[1] += 1;
                }
                schwarz_worst.observe(q, 1.0, || json!({"x": point_json(&x)}));
                if let SelfMap::Mobius(_) = psi {
                    let dev = (q - 1.0).abs();
                    if dev > BC_EQUALITY_TOL {
                        violations[2] += 1;
                    }
                    bc_eq_worst.observe(dev, BC_EQUALITY_TOL, || json!({"x": point_json(&x)}));
                }
                let tt = tau_tilde(psi, &x);
                let t = tau(psi, &x);
                if tt < t - 1e-15 {
                    violations[3] += 1;
                }
                tt_worst.observe(t, tt, || json!({"x": point_json(&x)}));
            }
            (violations, kalaj_worst, schwarz_worst, bc_eq_worst, tt_worst)
        });
        let mut kalaj_worst = Worst::new();
        let mut schwarz_worst = Worst::new();
        let mut bc_eq_worst = Worst::new();
        let mut tt_worst = Worst::new();
        let mut violations = [0usize; 4];
        for (v, kw, sw, bw, tw) in results {
            for k in 0..4 {
                violations[k] += v[k];
            }
            kalaj_worst.merge(kw);
            schwarz_worst.merge(sw);
            bc_eq_worst.merge(bw);
            tt_worst.merge(tw);
        }
        out.push(Assertion::new(
            format!("compose.kalaj_bound.d{dim}"),
            "(1 - ||x||^2) / sqrt(1 - ||psi(x)||^2) ||psi'(x)|| <= 1",
            Some(dim),
            draws,
            violations[0],
            kalaj_worst.lhs,
            kalaj_worst.rhs,
            KALAJ_TOL,
            json!({"worst": kalaj_worst.witness, "seed": p.seed}),
        ));
        out.push(Assertion::new(
            format!("compose.schwarz_quotient.d{dim}"),
            "B(x, w) / C(x, w) <= 1",
            Some(dim),
            draws,
            violations[1],
            schwarz_worst.lhs,
            schwarz_worst.rhs,
            SCHWARZ_TOL,
            json!({"worst": schwarz_worst.witness}),
        ));
        out.push(Assertion::new(
            format!("compose.schwarz_equality_automorphism.d{dim}"),
            "B/C = 1 for automorphisms (to 1e-8)",
            Some(dim),
            draws,
            violations[2],
            bc_eq_worst.lhs,
            bc_eq_worst.rhs,
            0.0,
            json!({"worst": bc_eq_worst.witness}),
        ));
        out.push(Assertion::new(
            format!("compose.tau_tilde_dominates.d{dim}"),
            "tau~(x) >= tau(x)",
            Some(dim),
            draws,
            violations[3],
            tt_worst.lhs,
            tt_worst.rhs,
            1e-15,
            serde_json::Value::Null,
        ));

        // the four explicit quotient bounds plus the aligned-preimage pair
        let mut rng = sampling::rng_for(p.seed, "bc-bounds", dim as u64);
        let mut bc_violations = 0usize;
        let mut bc_worst = Worst::new();
        let bc_draws = (draws / 10).max(200);
        for _ in 0..bc_draws {
            let psi = &pool[(rng.gen::<u64>() % pool.len() as u64) as usize];
            let x = random_point(&mut rng, dim, 0.95);
            let w = random_direction(&mut rng, dim) * cplx(1.3, 0.0);
            let image = psi.apply(&x);
            let jw = psi.jacobian(&x) * &w;
            let c_sq = inv_deriv0_norm_sq(&x, &w);
            let b_sq = inv_deriv0_norm_sq(&image, &jw);
            let wx2 = 1.0 - x.norm() * x.norm();
            let wp2 = 1.0 - image.norm() * image.norm();
            let mut local = 0.0f64;
            // C^2 within [||w||^2/(1-||x||^2), ||w||^2/(1-||x||^2)^2]
            local = local.max(w.norm_squared() / wx2 - c_sq);
            local = local.max(c_sq - w.norm_squared() / (wx2 * wx2));
            // the analogue for B with psi'(x) w and psi(x)
            local = local.max(jw.norm_squared() / wp2 - b_sq);
            local = local.max(b_sq - jw.norm_squared() / (wp2 * wp2));
            // the two-sided quotient sandwich on the unit direction
            let q = (b_sq / c_sq).sqrt();
            let ju_norm = jw.norm() / w.norm();
            local = local.max(wx2 / wp2.sqrt() * ju_norm - q);
            local = local.max(q - wx2.sqrt() / wp2 * ju_norm);
            // aligned preimage: B equals the closed value and the quotient
            // dominates tau ||psi(x)|| / ||w||
            if let Ok(wx) = preimage_w(psi, &x) {
                if wx.norm() > 1e-9 {
                    let b_aligned = inv_deriv0_norm_sq(&image, &(psi.jacobian(&x) * &wx)).sqrt();
                    let closed = psi.jacobian_norm(&x) * image.norm() / wp2;
                    local = local.max((b_aligned - closed).abs());
                    let q_aligned = b_aligned / inv_deriv0_norm_sq(&x, &wx).sqrt();
                    local = local.max(tau(psi, &x) * image.norm() / wx.norm() - q_aligned);
                }
            }
            if local > 1e-9 {
                bc_violations += 1;
            }
            bc_worst.observe(local, 0.0, || json!({"x": point_json(&x)}));
        }
        out.push(Assertion::new(
            format!("compose.bc_bounds.d{dim}"),
            "the explicit two-sided bounds on B, C and B/C hold",
            Some(dim),
            bc_draws,
            bc_violations,
            bc_worst.lhs,
            bc_worst.rhs,
            1e-9,
            json!({"worst": bc_worst.witness}),
        ));

        // the composition operator contracts the invariant weight pointwise
        let mut rng = sampling::rng_for(p.seed, "compose-contract", dim as u64);
        let family = standard_family(dim, p.seed);
        let mut contract_violations = 0usize;
        let mut contract_worst = Worst::new();
        let contract_draws = (draws / 10).max(200);
        for _ in 0..contract_draws {
            let psi = &pool[(rng.gen::<u64>() % pool.len() as u64) as usize];
            let f = &family[(rng.gen::<u64>() % family.len() as u64) as usize];
            let x = random_point(&mut rng, dim, 0.95);
            let lhs = composed_invariant_gradient_norm(f, psi, &x);
            let rhs = invariant_gradient_norm(f, &psi.apply(&x)).unwrap();
            if lhs > rhs + 1e-9 {
                contract_violations += 1;
            }
            contract_worst.observe(lhs, rhs, || json!({"x": point_json(&x)}));
        }
        out.push(Assertion::new(
            format!("compose.invariant_contraction.d{dim}"),
            "the invariant weight of f o psi never exceeds that of f at psi(x)",
            Some(dim),
            contract_draws,
            contract_violations,
            contract_worst.lhs,
            contract_worst.rhs,
            1e-9,
            json!({"worst": contract_worst.witness}),
        ));

        // automorphisms preserve the estimated invariant semi-norm
        let mut rng = sampling::rng_for(p.seed, "compose-estimator", dim as u64);
        let a = random_point(&mut rng, dim, 0.6);
        let f = HoloFn::cayley(random_point(&mut rng, dim, 0.6));
        let composed = f.clone().precompose(MobiusMap::new(a)).unwrap();
        let budget = p.cert_budget("compose-estimator", dim as u64);
        let base = seminorm(&f, SeminormKind::Invariant, &budget).value;
        let comp = seminorm(&composed, SeminormKind::Invariant, &budget).value;
        out.push(Assertion::new(
            format!("compose.seminorm_preserved.d{dim}"),
            "estimated ||f o phi_a||_I / ||f||_I >= 1 - estimator tolerance",
            Some(dim),
            1,
            0,
            1.0 - ESTIMATOR_RATIO_TOL,
            comp / base,
            0.0,
            json!({"base": base, "composed": comp}),
        ));
    }

    // the planar sharp example attains the derivative bound at the origin
    let origin2 = BallPoint::origin(2);
    let mut worst_eq = 0.0f64;
    for k in 0..10 {
        let t = 0.12 + 0.135 * k as f64;
        let kal = SelfMap::kalaj(t).unwrap();
        worst_eq = worst_eq.max((kalaj_check(&kal, &origin2) - 1.0).abs());
    }
    out.push(Assertion::new(
        "compose.kalaj_equality",
        "the planar example attains the derivative bound at the origin",
        None,
        10,
        usize::from(worst_eq > KALAJ_TOL),
        worst_eq,
        KALAJ_TOL,
        0.0,
        serde_json::Value::Null,
    ));

    // bounded-below scanners: the automorphism passes the sufficient
    // condition with witnesses phi_a(y); the contraction is obstructed
    let a = BallPoint::from_real(&[0.3, 0.1]).unwrap();
    let phi = SelfMap::Mobius(MobiusMap::new(a.clone()));
    let grid = polar_grid(2, &[0.3, 0.6, 0.9], 8, 6, p.seed);
    let budget = ScanBudget {
        x_samples: 256,
        refine_iters: 80,
        seed: p.seed,
    };
    let scan = sufficient_scan(&phi, 1e-6, 1.0 - 1e-6, &grid, &budget, 2.6);
    let mut max_witness_distance = 0.0f64;
    let mut failures = 0usize;
    for w in &scan.witnesses {
        match &w.x {
            Some(x) => {
                let expected = MobiusMap::new(a.clone()).apply(&w.y).unwrap();
                max_witness_distance =
                    max_witness_distance.max((x.coords() - expected.coords()).norm());
            }
            None => failures += 1,
        }
    }
    if !scan.success {
        failures += 1;
    }
    out.push(Assertion::new(
        "compose.sufficient_automorphism",
        "the automorphism passes the sufficient condition with witnesses phi_a(y)",
        Some(2),
        grid.len(),
        failures,
        max_witness_distance,
        WITNESS_DISTANCE_TOL,
        0.0,
        crate::report::sufficient_scan_json(&scan),
    ));

    let half = SelfMap::scalar(cplx(0.5, 0.0), 2).unwrap();
    let near_boundary = polar_grid(2, &[0.9, 0.95], 8, 0, p.seed);
    let nscan = necessary_scan(&half, 0.5, &near_boundary, &budget);
    out.push(Assertion::new(
        "compose.scalar_obstruction",
        "the half contraction leaves near-boundary targets unreachable (r_hat >= 0.9)",
        Some(2),
        near_boundary.len(),
        0,
        0.9,
        nscan.r_hat,
        0.0,
        crate::report::necessary_scan_json(&nscan),
    ));
    out
}

// ---------------------------------------------------------------------
// interp
// ---------------------------------------------------------------------

fn geometric_nodes(dim: usize) -> InterpSequence {
    let points = (1..=5)
        .map(|k| {
            let mut coords = vec![0.0; dim];
            coords[0] = 1.0 - 2.0_f64.powi(-k);
            BallPoint::from_real(&coords).unwrap()
        })
        .collect();
    InterpSequence::new(points).unwrap()
}

fn cayley_basis(dim: usize) -> Vec<HoloFn> {
    (0..8)
        .map(|j| {
            let mut coords = vec![0.0; dim];
            coords[0] = 0.35 + 0.08 * j as f64;
            HoloFn::cayley(BallPoint::from_real(&coords).unwrap())
        })
        .collect()
}

pub fn suite_interp(p: &SuiteParams) -> Vec<Assertion> {
    let mut out = Vec::new();
    let dim = 2usize;
    let seq = geometric_nodes(dim);
    let basis = cayley_basis(dim);

    // separation examples with frozen closed-form values
    let sep = interp_separation(&seq).unwrap();
    out.push(Assertion::new(
        "interp.separation_geometric",
        "geometric nodes 1 - 2^{-k} separate at 1/(3 - 2^{-4}) = 16/47",
        Some(dim),
        seq.len(),
        0,
        (sep - 16.0 / 47.0).abs(),
        1e-12,
        0.0,
        json!({"separation": sep}),
    ));
    let antipodal = InterpSequence::new(vec![
        BallPoint::from_real(&[0.9]).unwrap(),
        BallPoint::from_real(&[-0.9]).unwrap(),
    ])
    .unwrap();
    let sep2 = interp_separation(&antipodal).unwrap();
    out.push(Assertion::new(
        "interp.separation_antipodal",
        "antipodal nodes at radius 0.9 separate at 1.8/1.81",
        Some(1),
        2,
        0,
        (sep2 - 1.8 / 1.81).abs(),
        1e-12,
        0.0,
        json!({"separation": sep2}),
    ));

    // the section of the geometric nodes has full numerical rank
    let section = finite_section(&seq, &basis).unwrap();
    out.push(Assertion::new(
        "interp.section_rank",
        "the finite section of separated nodes has a positive smallest singular value",
        Some(dim),
        seq.len(),
        0,
        SECTION_COLLAPSE,
        section.sigma_min,
        0.0,
        json!({"sigma_min": section.sigma_min}),
    ));

    // merging two nodes collapses the smallest singular value
    let mut merged_points: Vec<BallPoint> = seq.points().to_vec();
    merged_points[1] = merged_points[0].clone();
    let merged = InterpSequence::new(merged_points).unwrap();
    let collapsed = finite_section(&merged, &basis).unwrap();
    out.push(Assertion::new(
        "interp.section_collapse",
        "merging two nodes drives the smallest singular value below 1e-8",
        Some(dim),
        merged.len(),
        0,
        collapsed.sigma_min,
        SECTION_COLLAPSE,
        0.0,
        json!({"sigma_min": collapsed.sigma_min}),
    ));

    // row-wise dilation-difference bound under small perturbations
    let budget = p.cert_budget("interp-seminorms", 0);
    for (k, delta) in [0.001, 0.01, 0.05].into_iter().enumerate() {
        let moved: Vec<BallPoint> = seq
            .points()
            .iter()
            .map(|pt| {
                let a = pt.coords()[0].re;
                let mut coords = vec![0.0; dim];
                coords[0] = (a + delta) / (1.0 + a * delta);
                BallPoint::from_real(&coords).unwrap()
            })
            .collect();
        let perturbed = InterpSequence::new(moved).unwrap();
        let check =
            operator::perturbation_check(&seq, &perturbed, &basis, &budget, 2.6, p.tol).unwrap();
        let mut worst = Worst::new();
        let mut violations = 0usize;
        for row in &check.rows {
            if !row.margin.holds(p.tol) {
                violations += 1;
            }
            worst.observe(row.margin.lhs, row.margin.rhs, || {
                json!({"norm_i": row.norm_i, "norm_r": row.norm_r, "bound_via_a0": row.bound_via_a0})
            });
        }
        out.push(Assertion::new(
            format!("interp.perturbation_bound.delta{k}"),
            "max_n |dilation gap at node n| <= 14 ||f||_I sup_n rho(x_n, y_n)",
            Some(dim),
            basis.len(),
            violations,
            worst.lhs,
            worst.rhs,
            p.tol,
            json!({
                "delta_hat": check.delta_hat,
                "sigma_min_base": check.sigma_min_base,
                "sigma_min_perturbed": check.sigma_min_perturbed,
                "worst": worst.witness,
            }),
        ));
    }
    out
}

/// Runs every suite under one configuration.
pub fn verify_all(config: &RunConfig) -> Result<Report> {
    let mut config = config.clone();
    config.suite = "all".into();
    run_suite(&config)
}
