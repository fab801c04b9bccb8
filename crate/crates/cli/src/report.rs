//! JSON run reports.

use std::time::Duration;

use mmfvs::solution::is_minimal_fvs;
use mmfvs::{FvsSolution, Graph, MinimalityVerdict};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub solution_size: usize,
    /// 1-based vertex numbers, ascending.
    pub solution: Vec<u32>,
    pub guarantee: Option<f64>,
    pub branch: Option<String>,
    pub elapsed_ms: f64,
    pub certificate_ok: bool,
    pub optimal: Option<bool>,
    #[serde(default)]
    pub details: serde_json::Value,
}

impl Report {
    /// Re-checks `sol` against `g` from scratch and refuses to build a
    /// report for a solution that fails.
    pub fn new(
        algorithm: &str,
        g: &Graph,
        sol: &FvsSolution,
        elapsed: Duration,
    ) -> Result<Self, CliError> {
        sol.verify(g)
            .map_err(|e| CliError::Certificate(format!("{algorithm}: {e}")))?;
        match is_minimal_fvs(g, &sol.fvs)? {
            MinimalityVerdict::Minimal => {}
            other => {
                return Err(CliError::Certificate(format!("{algorithm}: {other:?}")));
            }
        }
        Ok(Report {
            schema: SCHEMA,
            algorithm: algorithm.to_string(),
            n: g.n(),
            m: g.m(),
            solution_size: sol.size(),
            solution: sol.fvs.iter().map(|v| v.0 + 1).collect(),
            guarantee: None,
            branch: None,
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
            certificate_ok: true,
            optimal: None,
            details: serde_json::Value::Null,
        })
    }

    pub fn with_guarantee(mut self, g: f64) -> Self {
        self.guarantee = Some(g);
        self
    }

    pub fn with_branch(mut self, b: impl Into<String>) -> Self {
        self.branch = Some(b.into());
        self
    }

    pub fn with_optimal(mut self, o: bool) -> Self {
        self.optimal = Some(o);
        self
    }

    pub fn with_details(mut self, d: serde_json::Value) -> Self {
        self.details = d;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialise")
    }
}

/// The keys every report carries; used by tests and the bench validator.
pub const REQUIRED_KEYS: [&str; 12] = [
    "schema",
    "algorithm",
    "n",
    "m",
    "solution_size",
    "solution",
    "guarantee",
    "branch",
    "elapsed_ms",
    "certificate_ok",
    "optimal",
    "details",
];

/// Checks that `v` is a report object of the current schema.
pub fn validate_json(v: &serde_json::Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    for key in REQUIRED_KEYS {
        if !obj.contains_key(key) {
            return Err(format!("missing key `{key}`"));
        }
    }
    if obj["schema"] != SCHEMA {
        return Err(format!("unexpected schema {}", obj["schema"]));
    }
    let r: Report = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
    if r.solution.len() != r.solution_size {
        return Err("solution_size disagrees with solution".into());
    }
    if !r.solution.windows(2).all(|w| w[0] < w[1]) {
        return Err("solution is not sorted".into());
    }
    Ok(())
}
