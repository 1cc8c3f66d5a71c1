//! Command-line frontend for the certification suites.
//!
//! Exit codes: 0 when every assertion passes, 1 when at least one
//! inequality is violated (the report is still written), 2 on usage or
//! configuration errors.

use anyhow::Context;
use blochball::ball::{z_bound, BallPoint, RatioProbe};
use blochball::inequality::counterexample;
use blochball::num::cplx;
use blochball::operator::{
    kalaj_check, necessary_scan, polar_grid, sufficient_scan, tau, tau_tilde, ScanBudget,
};
use blochball::report::{fmt_f64, necessary_scan_json, sufficient_scan_json, ReportFormat, RunConfig};
use blochball::sampling;
use blochball::suites::run_suite;
use blochball::SelfMap;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "blochball",
    version,
    about = "Certification suites for the hyperbolic geometry of the complex unit ball"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run a certification suite and report every asserted inequality
    Verify {
        /// geometry | scaling | lipschitz | c0s | compose | interp | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Ball dimensions to scan (repeatable)
        #[arg(long = "dim")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Additive tolerance carried by randomized inequality checks
        #[arg(long, default_value_t = 1e-9, allow_hyphen_values = true)]
        tol: f64,
        /// Report file; stdout summary is always printed
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Tabulate the unbounded dilation-ratio sequence
    Counterexample {
        #[arg(long = "n-max", default_value_t = 100)]
        n_max: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Export the scaling ratio over an antipodal (t, |z|) grid as CSV
    ScanRatio {
        #[arg(long, default_value_t = 19)]
        t_steps: usize,
        #[arg(long, default_value_t = 25)]
        z_steps: usize,
        #[arg(long, default_value_t = 1e-9, allow_hyphen_values = true)]
        tol: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Analyze a named self-map: tau statistics, derivative bounds, and
    /// the bounded-below condition scanners
    AnalyzeMap {
        /// e.g. "mobius:a=0.3,0.1", "scalar:0.5", "kalaj:t=0.7"
        spec: String,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Admissibility threshold for the scanners
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        eps: f64,
        /// Target radius for the sufficiency search
        #[arg(long, default_value_t = 0.05, allow_hyphen_values = true)]
        r: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    if let Ok(threads) = std::env::var("BLOCHBALL_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: BLOCHBALL_THREADS must be a positive integer");
                return 2;
            }
        }
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify {
            suite,
            dims,
            samples,
            seed,
            tol,
            output,
            format,
        } => cmd_verify(suite, dims, samples, seed, tol, output, format),
        Command::Counterexample { n_max, output } => cmd_counterexample(n_max, output),
        Command::ScanRatio {
            t_steps,
            z_steps,
            tol,
            output,
        } => cmd_scan_ratio(t_steps, z_steps, tol, output),
        Command::AnalyzeMap {
            spec,
            samples,
            seed,
            eps,
            r,
            output,
        } => cmd_analyze_map(&spec, samples, seed, eps, r, output),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn write_output(path: Option<&PathBuf>, bytes: &[u8]) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display()))?;
        }
        None => {
            std::io::stdout().write_all(bytes)?;
        }
    }
    Ok(())
}

fn cmd_verify(
    suite: String,
    dims: Vec<usize>,
    samples: usize,
    seed: u64,
    tol: f64,
    output: Option<PathBuf>,
    format: FormatArg,
) -> anyhow::Result<i32> {
    let config = RunConfig {
        command: "verify".into(),
        suite,
        dims: if dims.is_empty() {
            vec![1, 2, 5, 16]
        } else {
            dims
        },
        samples,
        seed,
        tol,
        format: match format {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
        },
    };
    let report = run_suite(&config)?;
    for a in &report.assertions {
        println!(
            "{} {}  margin={:.3e}  [{} samples, {} violations]",
            if a.passed { "PASS" } else { "FAIL" },
            a.id,
            a.margin,
            a.samples,
            a.violations
        );
    }
    let violations = report.violations();
    println!(
        "{}: {} assertions, {} failed",
        report.suite,
        report.assertions.len(),
        violations
    );
    let bytes = match config.format {
        ReportFormat::Json => report.canonical_json(),
        ReportFormat::Csv => report.to_csv().into_bytes(),
    };
    if let Some(path) = &output {
        write_output(Some(path), &bytes)?;
    }
    Ok(if violations == 0 { 0 } else { 1 })
}

fn cmd_counterexample(n_max: u64, output: Option<PathBuf>) -> anyhow::Result<i32> {
    if n_max == 0 {
        anyhow::bail!("--n-max must be at least 1");
    }
    let mut csv = String::from("n,ratio_formula,ratio_direct,abs_difference\n");
    for n in 1..=n_max {
        let c = counterexample(n)?;
        csv.push_str(&format!(
            "{},{},{},{}\n",
            n,
            fmt_f64(c.ratio_formula),
            fmt_f64(c.ratio_direct),
            fmt_f64((c.ratio_formula - c.ratio_direct).abs())
        ));
    }
    write_output(output.as_ref(), csv.as_bytes())?;
    Ok(0)
}

fn cmd_scan_ratio(
    t_steps: usize,
    z_steps: usize,
    tol: f64,
    output: Option<PathBuf>,
) -> anyhow::Result<i32> {
    if tol.is_nan() || tol <= 0.0 {
        anyhow::bail!("--tol must be positive");
    }
    if t_steps == 0 || z_steps == 0 {
        write_output(output.as_ref(), b"")?;
        return Ok(0);
    }
    // |z| grid over (0, 2.5] with the rotation value 1 included exactly
    let mut z_values: Vec<f64> = (0..z_steps)
        .map(|j| 0.05 + (2.5 - 0.05) * j as f64 / (z_steps.max(2) - 1) as f64)
        .collect();
    z_values.push(1.0);
    z_values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    z_values.dedup();

    let mut csv = String::from("t,abs_z,within_hypothesis,ratio\n");
    let mut bound_violations = 0usize;
    for i in 0..t_steps {
        let t = if t_steps == 1 {
            0.5
        } else {
            0.05 + 0.9 * i as f64 / (t_steps - 1) as f64
        };
        let x = BallPoint::from_real(&[t]).unwrap();
        let y = BallPoint::from_real(&[-t]).unwrap();
        let bound = z_bound(&x, &y).unwrap();
        for &az in &z_values {
            let within = az <= bound;
            let ratio = RatioProbe::new(cplx(az, 0.0), x.clone(), y.clone())
                .ok()
                .map(|p| blochball::ball::scaling_ratio(&p));
            if within {
                if let Some(r) = ratio {
                    if r > 2.0 + tol {
                        bound_violations += 1;
                    }
                }
            }
            csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(t),
                fmt_f64(az),
                u8::from(within),
                ratio.map_or(String::new(), fmt_f64)
            ));
        }
    }
    write_output(output.as_ref(), csv.as_bytes())?;
    if bound_violations > 0 {
        eprintln!("{bound_violations} grid cells violate the bound inside the hypothesis region");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_analyze_map(
    spec: &str,
    samples: usize,
    seed: u64,
    eps: f64,
    r: f64,
    output: Option<PathBuf>,
) -> anyhow::Result<i32> {
    if eps.is_nan() || eps <= 0.0 || r.is_nan() || r <= 0.0 {
        anyhow::bail!("--eps and --r must be positive");
    }
    let psi = SelfMap::parse(spec)?;
    let dim = psi.dim();

    // tau / tau~ / derivative-bound statistics over random points
    let mut rng = sampling::rng_for(seed, "analyze-map", 0);
    let n = samples.max(16);
    let mut tau_min = f64::INFINITY;
    let mut tau_max = 0.0f64;
    let mut tau_sum = 0.0f64;
    let mut tt_min = f64::INFINITY;
    let mut tt_max = 0.0f64;
    let mut kalaj_max = 0.0f64;
    for _ in 0..n {
        let x = sampling::random_point(&mut rng, dim, 0.95);
        let t = tau(&psi, &x);
        tau_min = tau_min.min(t);
        tau_max = tau_max.max(t);
        tau_sum += t;
        let tt = tau_tilde(&psi, &x);
        tt_min = tt_min.min(tt);
        tt_max = tt_max.max(tt);
        kalaj_max = kalaj_max.max(kalaj_check(&psi, &x));
    }
    let kalaj_origin = kalaj_check(&psi, &BallPoint::origin(dim));
    kalaj_max = kalaj_max.max(kalaj_origin);

    let grid = polar_grid(dim, &[0.3, 0.6, 0.9], 8, 6, seed);
    let budget = ScanBudget {
        x_samples: samples.clamp(64, 2048),
        refine_iters: 80,
        seed,
    };
    let necessary = necessary_scan(&psi, eps, &grid, &budget);
    let a0_estimate = 2.6;
    let sufficient = sufficient_scan(&psi, r, eps, &grid, &budget, a0_estimate);
    let min_witness_tau = sufficient
        .witnesses
        .iter()
        .filter_map(|w| w.tau)
        .fold(f64::INFINITY, f64::min);

    let analysis = json!({
        "map": spec,
        "dimension": dim,
        "samples": n,
        "seed": seed,
        "tau": {"min": tau_min, "max": tau_max, "mean": tau_sum / n as f64},
        "tau_tilde": {"min": tt_min, "max": tt_max},
        "derivative_bound": {"max": kalaj_max, "at_origin": kalaj_origin, "holds": kalaj_max <= 1.0 + 1e-9},
        "a0_estimate": a0_estimate,
        "necessary": necessary_scan_json(&necessary),
        "necessary_obstruction_flag": necessary.r_hat >= 0.8,
        "sufficient": sufficient_scan_json(&sufficient),
        "min_witness_tau": if min_witness_tau.is_finite() { Some(min_witness_tau) } else { None },
    });
    let mut bytes = serde_json::to_vec_pretty(&analysis)?;
    bytes.push(b'\n');
    write_output(output.as_ref(), &bytes)?;

    println!(
        "{spec}: tau in [{tau_min:.4}, {tau_max:.4}], derivative bound max {kalaj_max:.6}, \
         necessary r_hat = {:.4}{}, sufficient success = {}",
        necessary.r_hat,
        if necessary.r_hat >= 0.8 { " (obstruction)" } else { "" },
        sufficient.success
    );
    Ok(0)
}
