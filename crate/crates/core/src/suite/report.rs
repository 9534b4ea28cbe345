use std::fmt::Write as _;

use serde::Serialize;

use super::CaseReport;
use crate::prover::{ProveOptions, Status, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Budgets and output settings shared by every command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    /// Echoed only: exact signs start at 64 bits of π and double until decided.
    pub precision_bits: u32,
    pub max_depth: u32,
    pub min_width: f64,
    pub grid_points: usize,
    pub format: Format,
    /// Not echoed, so reports written to different files stay comparable.
    #[serde(skip)]
    pub output: Option<std::path::PathBuf>,
    /// Adds wall-clock times to the report, which then differs between runs.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = ProveOptions::default();
        RunConfig {
            precision_bits: 128,
            max_depth: p.max_depth,
            min_width: p.min_width,
            grid_points: 1000,
            format: Format::Json,
            output: None,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.precision_bits == 0 || self.max_depth == 0 || self.grid_points == 0 {
            return Err("precision bits, depth budget and grid size must be positive".into());
        }
        if !(self.min_width > 0.0 && self.min_width.is_finite()) {
            return Err(format!("min width {} must be a positive number", self.min_width));
        }
        Ok(())
    }

    pub fn prove_options(&self) -> ProveOptions {
        ProveOptions { max_depth: self.max_depth, min_width: self.min_width, record_leaves: false }
    }
}

/// One obligation of a case and its verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    /// prove_less, poly_positive, mixed_trig, exact, grid, limit or crossing.
    pub kind: &'static str,
    pub claim: String,
    pub status: Status,
    pub leaf_count: usize,
    pub max_depth: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub version: &'static str,
    pub config: RunConfig,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn new(config: &RunConfig, cases: Vec<CaseReport>) -> Self {
        SuiteReport { version: env!("CARGO_PKG_VERSION"), config: config.clone(), cases }
    }

    /// Combined verdict; an empty report counts as verified.
    pub fn status(&self) -> Status {
        self.cases.iter().map(|c| c.status).fold(Status::Verified, Status::and)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per claim and per tightness comparison.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["case", "kind", "claim", "status", "leaf_count", "max_depth", "witness", "detail"])
            .expect("in-memory write");
        for case in &self.cases {
            for c in &case.claims {
                let witness = c.witness.as_ref().map(|w| w.point.to_string()).unwrap_or_default();
                w.write_record([
                    case.id.as_str(),
                    c.kind,
                    &c.claim,
                    &c.status.to_string(),
                    &c.leaf_count.to_string(),
                    &c.max_depth.to_string(),
                    &witness,
                    c.detail.as_deref().unwrap_or(""),
                ])
                .expect("in-memory write");
            }
            for t in &case.tightness {
                let detail = format!(
                    "{} of {} points strictly better, {} worse, max improvement {:e}",
                    t.strictly_better, t.points, t.worse, t.max_improvement
                );
                w.write_record([
                    case.id.as_str(),
                    "tightness",
                    &format!("{} tighter than {}", t.new, t.old),
                    &t.status.to_string(),
                    "0",
                    "0",
                    "",
                    &detail,
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for case in &self.cases {
            let _ = writeln!(s, "{:<12} {}", case.id, case.status);
            for c in &case.claims {
                let _ = write!(s, "    [{}] {}: {}", c.status, c.kind, c.claim);
                if let Some(d) = &c.detail {
                    let _ = write!(s, " ({d})");
                }
                s.push('\n');
            }
            for t in &case.tightness {
                let _ = writeln!(
                    s,
                    "    [{}] tightness: {} vs {}: {}/{} better, {} worse",
                    t.status, t.new, t.old, t.strictly_better, t.points, t.worse
                );
            }
        }
        let _ = writeln!(s, "overall: {}", self.status());
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}
