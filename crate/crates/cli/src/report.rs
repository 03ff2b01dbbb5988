//! Report structures and the two output encodings.
//!
//! Every JSON report is a single document `{command, status, config,
//! results}` (see `schemas/report.schema.json` in the repository root);
//! identical resolved configurations serialize byte-identically. CSV output
//! is the plottable row set of each command with a header line.

use serde::Serialize;

/// The fully resolved run configuration, echoed into every JSON report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ResolvedConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    /// Coefficients after reduction, as canonical element indices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_bits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_reps_limit: Option<u64>,
    pub format: String,
}

#[derive(Serialize)]
pub struct Report<R: Serialize> {
    pub command: String,
    pub status: String,
    pub config: ResolvedConfig,
    pub results: R,
}

#[derive(Serialize)]
pub struct CountRow {
    pub s: u32,
    /// Decimal string: counts can exceed every fixed-width integer.
    pub n: String,
}

#[derive(Serialize)]
pub struct CountResults {
    pub counts: Vec<CountRow>,
}

#[derive(Serialize)]
pub struct RootRow {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub phase: f64,
}

#[derive(Serialize)]
pub struct WeilSummary {
    pub max_relative_magnitude_deviation: f64,
    pub unmatched_conjugates: usize,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct ZetaResults {
    pub p_coeffs: Vec<String>,
    pub p_in_numerator: bool,
    pub trivial_factors: Vec<String>,
    pub roots: Vec<RootRow>,
    pub weil: WeilSummary,
    pub counts: Vec<CountRow>,
    /// Zeta series coefficients through the requested order (integers for a
    /// genuine variety, kept as exact fraction strings).
    pub series: Vec<String>,
}

#[derive(Serialize)]
pub struct SimulateRow {
    pub b: Vec<u32>,
    pub theta_sim: f64,
    pub theta_classical: f64,
    pub delta: f64,
    pub overlap: f64,
}

#[derive(Serialize)]
pub struct SimulateResults {
    pub tuples: Vec<SimulateRow>,
    pub max_delta: f64,
    pub tolerance: f64,
}

#[derive(Serialize)]
pub struct QpeResults {
    pub theta_hat: f64,
    pub theta_classical: f64,
    pub delta: f64,
    pub histogram: Vec<HistogramRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Vec<f64>>,
}

#[derive(Serialize)]
pub struct HistogramRow {
    pub outcome: u64,
    pub count: usize,
    pub theta: f64,
}

#[derive(Serialize)]
pub struct EstimateRow {
    pub s: u32,
    pub estimate: String,
    pub error_bar: f64,
    pub trace_re: f64,
    pub trace_im: f64,
    pub dim: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

#[derive(Serialize)]
pub struct EstimateResults {
    pub estimates: Vec<EstimateRow>,
}

#[derive(Serialize)]
pub struct OrbitRow {
    pub d: usize,
    pub b: String,
}

#[derive(Serialize)]
pub struct OrbitResults {
    pub counts: Vec<CountRow>,
    pub orbits: Vec<OrbitRow>,
    pub euler_matches_exp_form: bool,
    pub verdict: String,
}

/// Minimal RFC-4180 quoting: fields with commas, quotes or newlines get
/// wrapped and inner quotes doubled.
pub fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_escape(f))
        .collect::<Vec<_>>()
        .join(",")
}
