//! Scalar-lemma checkers, the dilation scaling scan with its sharpness
//! search, and the unboundedness counterexample.

use crate::ball::{inner, rho_ball, scaling_ratio, z_bound, BallPoint, RatioProbe};
use crate::holo::Margin;
use crate::num::{cplx, Complex64};
use crate::sampling;
use crate::search::{self, AscentOptions};
use crate::{Error, Result};

/// The scalar bundle attached to a pair of points: `r = ||x||`,
/// `s = ||y||`, `p = <x, y>`, `m = Re p`, `u = r^2 + s^2`,
/// `A = u - 2m = ||x - y||^2` and `B = r^2 s^2 - |p|^2`.
#[derive(Debug, Clone, Copy)]
pub struct LemmaQuantities {
    pub r: f64,
    pub s: f64,
    pub p: Complex64,
    pub m: f64,
    pub u: f64,
    pub a: f64,
    pub b: f64,
}

impl LemmaQuantities {
    pub fn new(x: &BallPoint, y: &BallPoint) -> Result<Self> {
        let p = inner(x, y)?;
        let r = x.norm();
        let s = y.norm();
        let m = p.re;
        let u = r * r + s * s;
        Ok(Self {
            r,
            s,
            p,
            m,
            u,
            a: u - 2.0 * m,
            b: r * r * s * s - p.norm_sqr(),
        })
    }
}

/// `|1 - p| <= 2 |1 - |z|^2 p|` under the dilation hypothesis on `|z|`.
pub fn lemma1_check(x: &BallPoint, y: &BallPoint, z: Complex64) -> Result<Margin> {
    let q = LemmaQuantities::new(x, y)?;
    let max_norm = q.r.max(q.s);
    if max_norm > 0.0 && z.norm() > (1.0 + max_norm) / (2.0 * max_norm) {
        return Err(Error::HypothesisViolated(format!(
            "|z| = {} exceeds the dilation bound {}",
            z.norm(),
            (1.0 + max_norm) / (2.0 * max_norm)
        )));
    }
    let one = cplx(1.0, 0.0);
    let t = z.norm_sqr();
    Ok(Margin {
        lhs: (one - q.p).norm(),
        rhs: 2.0 * (one - q.p * cplx(t, 0.0)).norm(),
    })
}

/// `A |1 - p|^2 / (A - B)`, bounded by four. Pairs with `A - B` near zero
/// (`x` and `y` nearly identical) are a 0/0 form and are rejected.
pub fn lemma2_value(x: &BallPoint, y: &BallPoint) -> Result<f64> {
    let q = LemmaQuantities::new(x, y)?;
    if q.a - q.b <= 1e-14 {
        return Err(Error::DegeneratePair(format!(
            "A - B = {:.3e} is too small for the quotient",
            q.a - q.b
        )));
    }
    let one_minus_p = (cplx(1.0, 0.0) - q.p).norm_sqr();
    Ok(q.a * one_minus_p / (q.a - q.b))
}

/// `f(a, b, c) = (3 - b^2)(a - c) - (a^2 - b^2)(2 - c)`, nonnegative on
/// the ordered simplex `0 <= c <= b <= a <= 1`.
pub fn maxfun(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(0.0 <= c && c <= b && b <= a && a <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "({a}, {b}, {c}) is outside the ordered simplex"
        )));
    }
    Ok((3.0 - b * b) * (a - c) - (a * a - b * b) * (2.0 - c))
}

/// Best dilation ratio found by local ascent, with its witness probe.
#[derive(Debug, Clone)]
pub struct SharpnessReport {
    pub best_ratio: f64,
    pub witness: RatioProbe,
    pub iterations: usize,
    pub seed: u64,
}

/// Outcome of the randomized scaling-theorem scan in one dimension.
#[derive(Debug, Clone)]
pub struct TheoremScan {
    pub dim: usize,
    pub samples: usize,
    pub violations: usize,
    pub worst_ratio: f64,
    pub worst_probe: Option<RatioProbe>,
    pub sharpness: SharpnessReport,
}

/// Radius cap for the sharpness ascent. The scan probes go all the way to
/// the construction margin, but the ascent deliberately climbs toward the
/// extremal configuration where the true margin below two shrinks like
/// `(1 - max_norm)/2`; capping the shell keeps that margin far above
/// floating-point noise.
const ASCENT_SHELL: f64 = 0.999;

fn probe_from_params(params: &[f64]) -> Option<RatioProbe> {
    let n2 = (params.len() - 2) / 2;
    let x = search::params_to_point(&params[..n2], ASCENT_SHELL);
    let y = search::params_to_point(&params[n2..2 * n2], ASCENT_SHELL);
    let z = cplx(params[2 * n2], params[2 * n2 + 1]);
    RatioProbe::new(z, x, y).ok()
}

fn project_probe_params(params: &mut [f64]) {
    let n2 = (params.len() - 2) / 2;
    search::project_params(&mut params[..n2], ASCENT_SHELL);
    search::project_params(&mut params[n2..2 * n2], ASCENT_SHELL);
    let x = search::params_to_point(&params[..n2], ASCENT_SHELL);
    let y = search::params_to_point(&params[n2..2 * n2], ASCENT_SHELL);
    let bound = z_bound(&x, &y).unwrap_or(1.0);
    let z = cplx(params[2 * n2], params[2 * n2 + 1]);
    let zn = z.norm();
    let clamped = zn.clamp(1e-3, bound);
    if zn > 0.0 && (clamped - zn).abs() > 0.0 {
        let scaled = z * cplx(clamped / zn, 0.0);
        params[2 * n2] = scaled.re;
        params[2 * n2 + 1] = scaled.im;
    } else if zn == 0.0 {
        params[2 * n2] = 1e-3;
    }
}

fn ratio_objective(params: &[f64]) -> f64 {
    match probe_from_params(params) {
        Some(p) if rho_ball(p.x(), p.y()).unwrap() >= sampling::MIN_PAIR_RHO => scaling_ratio(&p),
        _ => -1.0,
    }
}

fn probe_to_params(p: &RatioProbe) -> Vec<f64> {
    let mut params = search::point_to_params(p.x());
    params.extend(search::point_to_params(p.y()));
    params.push(p.z().re);
    params.push(p.z().im);
    params
}

/// Runs local ascent on the scaling ratio from the given probes and
/// returns the sharpest one found.
pub fn sharpness_search(starts: &[RatioProbe], steps: usize, seed: u64) -> SharpnessReport {
    let opts = AscentOptions {
        max_steps: steps,
        init_step: 0.02,
        ..AscentOptions::default()
    };
    let mut best: Option<(f64, RatioProbe)> = None;
    for p in starts {
        let mut params = probe_to_params(p);
        project_probe_params(&mut params);
        let (end, _) = search::maximize_projected(&params, ratio_objective, project_probe_params, &opts);
        if let Some(probe) = probe_from_params(&end) {
            let value = scaling_ratio(&probe);
            if best.as_ref().is_none_or(|(v, _)| value > *v) {
                best = Some((value, probe));
            }
        }
    }
    let (best_ratio, witness) =
        best.expect("at least one start produces a valid probe");
    SharpnessReport {
        best_ratio,
        witness,
        iterations: steps,
        seed,
    }
}

/// Draws hypothesis-satisfying probes, checks membership and the bound
/// of two, and finishes with a sharpness ascent seeded from the best draws.
pub fn theorem_scan(dim: usize, samples: usize, seed: u64, tol: f64) -> TheoremScan {
    struct Batch {
        violations: usize,
        best: Vec<(f64, RatioProbe)>,
        worst: Option<(f64, RatioProbe)>,
    }
    let per_batch = 4096;
    let batches = sampling::batched(samples, per_batch, seed, "theorem-scan", |mut rng, count| {
        let mut violations = 0;
        let mut best: Vec<(f64, RatioProbe)> = Vec::new();
        let mut worst: Option<(f64, RatioProbe)> = None;
        for _ in 0..count {
            let probe = sampling::random_probe(&mut rng, dim);
            debug_assert!(probe.within_hypothesis());
            let ratio = scaling_ratio(&probe);
            if ratio > 2.0 + tol {
                violations += 1;
            }
            if worst.as_ref().is_none_or(|(w, _)| ratio > *w) {
                worst = Some((ratio, probe.clone()));
            }
            best.push((ratio, probe));
            best.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            best.truncate(2);
        }
        Batch {
            violations,
            best,
            worst,
        }
    });

    let mut violations = 0;
    let mut starts: Vec<(f64, RatioProbe)> = Vec::new();
    let mut worst: Option<(f64, RatioProbe)> = None;
    for b in batches {
        violations += b.violations;
        starts.extend(b.best);
        if let Some((w, p)) = b.worst {
            if worst.as_ref().is_none_or(|(cur, _)| w > *cur) {
                worst = Some((w, p));
            }
        }
    }
    starts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    starts.truncate(6);
    let start_probes: Vec<RatioProbe> = starts.into_iter().map(|(_, p)| p).collect();
    let sharpness = sharpness_search(&start_probes, 600, seed);

    TheoremScan {
        dim,
        samples,
        violations,
        worst_ratio: worst.as_ref().map_or(0.0, |(w, _)| *w),
        worst_probe: worst.map(|(_, p)| p),
        sharpness,
    }
}

/// Formula and direct evaluations of the unbounded dilation ratio at
/// `x = 1/2`, `y_n = 1/2 - 1/n`, `z_n = 2 - 1/n`.
#[derive(Debug, Clone, Copy)]
pub struct CounterexampleRatios {
    pub ratio_formula: f64,
    pub ratio_direct: f64,
}

/// The closed-form ratio `(3 n^3 + 2 n^2) / (12 n^2 - 9 n + 2)` against
/// the direct metric computation; the two agree to 1e-8 relative and the
/// sequence grows without bound.
pub fn counterexample(n: u64) -> Result<CounterexampleRatios> {
    counterexample_embedded(n, 1)
}

/// The same construction embedded along the first coordinate axis of a
/// higher-dimensional ball; the ratios are dimension-free.
pub fn counterexample_embedded(n: u64, dim: usize) -> Result<CounterexampleRatios> {
    if n == 0 {
        return Err(Error::InvalidArgument("counterexample needs n >= 1".into()));
    }
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    let nf = n as f64;
    let ratio_formula =
        (3.0 * nf.powi(3) + 2.0 * nf * nf) / (12.0 * nf * nf - 9.0 * nf + 2.0);

    let mut x_coords = vec![0.0; dim];
    x_coords[0] = 0.5;
    let mut y_coords = vec![0.0; dim];
    y_coords[0] = 0.5 - 1.0 / nf;
    let x = BallPoint::from_real(&x_coords)?;
    let y = BallPoint::from_real(&y_coords)?;
    let z = cplx(2.0 - 1.0 / nf, 0.0);
    let probe = RatioProbe::new(z, x, y)?;
    Ok(CounterexampleRatios {
        ratio_formula,
        ratio_direct: scaling_ratio(&probe),
    })
}

/// A probe certifying that the pseudohyperbolic distance is not
/// positively homogeneous: `|rho(zx, zy) - |z| rho(x, y)| > 0.1`.
pub fn norm_extension_refuted(seed: u64) -> RatioProbe {
    let mut rng = sampling::rng_for(seed, "norm-extension", 0);
    for _ in 0..64 {
        let probe = sampling::random_probe(&mut rng, 1);
        let rho_z = rho_ball(
            &probe.x().scaled(probe.z()).unwrap(),
            &probe.y().scaled(probe.z()).unwrap(),
        )
        .unwrap();
        let homogeneous = probe.z().norm() * rho_ball(probe.x(), probe.y()).unwrap();
        if (rho_z - homogeneous).abs() > 0.1 {
            return probe;
        }
    }
    // the unbounded sequence at n = 10 always witnesses the failure
    let x = BallPoint::from_real(&[0.5]).unwrap();
    let y = BallPoint::from_real(&[0.4]).unwrap();
    RatioProbe::new(cplx(1.9, 0.0), x, y).expect("valid deterministic witness")
}
