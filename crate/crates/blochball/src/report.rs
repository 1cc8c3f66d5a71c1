//! Report data model: every suite emits a list of assertions carrying
//! both sides of each inequality, the worst margin, and a witness.
//!
//! Reports are reproducible artifacts: they echo the configuration and
//! seed, contain no timestamps, and serialize to byte-identical JSON for
//! identical configurations.

use crate::ball::{BallPoint, RatioProbe};
use crate::num::Complex64;
use crate::operator::{NecessaryScan, SufficientScan, TargetWitness};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Output format for tables and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Echoed run configuration; identical configurations produce
/// byte-identical report bodies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub suite: String,
    pub dims: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub format: ReportFormat,
}

impl RunConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(crate::Error::InvalidArgument(
                "dimensions must be nonempty and at least one".into(),
            ));
        }
        if self.samples == 0 {
            return Err(crate::Error::InvalidArgument(
                "sample count must be at least one".into(),
            ));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(crate::Error::InvalidArgument(
                "tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// One checked inequality: `lhs <= rhs + tolerance` (statements of the
/// form `value >= threshold` put the threshold on the left).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Assertion {
    pub id: String,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub samples: usize,
    pub violations: usize,
    /// Worst-case left side observed.
    pub lhs: f64,
    /// The bound it is compared against.
    pub rhs: f64,
    pub tolerance: f64,
    /// `rhs + tolerance - lhs`; nonnegative iff the worst case passes.
    pub margin: f64,
    pub passed: bool,
    pub witness: Value,
}

impl Assertion {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: impl Into<String>,
        statement: impl Into<String>,
        dimension: Option<usize>,
        samples: usize,
        violations: usize,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        witness: Value,
    ) -> Self {
        let margin = rhs + tolerance - lhs;
        Self {
            id: id.into(),
            statement: statement.into(),
            dimension,
            samples,
            violations,
            lhs,
            rhs,
            tolerance,
            margin,
            passed: violations == 0 && margin >= 0.0,
            witness,
        }
    }
}

/// A full verification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub version: String,
    pub config: RunConfig,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn new(config: RunConfig, assertions: Vec<Assertion>) -> Self {
        Self {
            suite: config.suite.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            assertions,
        }
    }

    pub fn violations(&self) -> usize {
        self.assertions.iter().filter(|a| !a.passed).count()
    }

    /// Canonical JSON bytes: field order is fixed by the struct layout
    /// and floats use the shortest round-trip representation, so the
    /// output is byte-stable for a fixed configuration.
    pub fn canonical_json(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("report serializes");
        bytes.push(b'\n');
        bytes
    }

    /// CSV rows, one per assertion, with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,dimension,samples,violations,lhs,rhs,tolerance,margin,passed\n");
        for a in &self.assertions {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                a.id,
                a.dimension.map_or(String::new(), |d| d.to_string()),
                a.samples,
                a.violations,
                fmt_f64(a.lhs),
                fmt_f64(a.rhs),
                fmt_f64(a.tolerance),
                fmt_f64(a.margin),
                a.passed
            ));
        }
        out
    }
}

/// Formats a double with 17 significant digits ('.' decimal, no locale),
/// which round-trips exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn point_json(p: &BallPoint) -> Value {
    Value::Array(p.coords().iter().map(|&c| complex_json(c)).collect())
}

pub fn probe_json(p: &RatioProbe) -> Value {
    json!({
        "z": complex_json(p.z()),
        "x": point_json(p.x()),
        "y": point_json(p.y()),
    })
}

fn target_witness_json(w: &TargetWitness) -> Value {
    json!({
        "y": point_json(&w.y),
        "x": w.x.as_ref().map(point_json),
        "rho": w.rho,
        "tau": w.tau,
        "tau_tilde": w.tau_tilde,
        "preimage_residual": w.preimage_residual,
        "k_value": w.k_value,
    })
}

/// Witness table of a necessary-condition scan.
pub fn necessary_scan_json(scan: &NecessaryScan) -> Value {
    json!({
        "eps": scan.eps,
        "r_hat": scan.r_hat,
        "empty_targets": scan.empty_targets,
        "targets": scan.witnesses.iter().map(target_witness_json).collect::<Vec<_>>(),
    })
}

/// Witness table of a sufficient-condition scan.
pub fn sufficient_scan_json(scan: &SufficientScan) -> Value {
    json!({
        "r": scan.r,
        "eps": scan.eps,
        "success": scan.success,
        "r_clears_threshold": scan.r_clears_threshold,
        "k_inf": scan.k_inf,
        "targets": scan.witnesses.iter().map(target_witness_json).collect::<Vec<_>>(),
    })
}
