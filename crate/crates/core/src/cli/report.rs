//! Report types and their text and JSON renderings.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::ExpectedEntry;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::flex::{BalanceCertificate, BalanceOutcome, BalanceProblem, FlexibilityReport, RootSummary};
use crate::roots::RootKind;

/// Significant digits of every float in JSON output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Provenance wrapper around every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub report: T,
}

impl<T> Envelope<T> {
    pub fn new(command: &str, seed: u64, tolerances: Tolerances, report: T) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed,
            tolerances,
            report,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecomposedRoot {
    pub values: Vec<[f64; 2]>,
    pub kind: RootKind,
    pub real_dim: usize,
    pub complex_dim: usize,
    pub orbit_size: usize,
    pub t_lambda: Vec<[f64; 2]>,
    pub root_vector_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub ambient: String,
    pub dim_g: usize,
    pub torus_dim: usize,
    pub zero_space_dim: usize,
    pub roots: Vec<DecomposedRoot>,
    pub total_dim: usize,
    pub orthogonality_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleCohomology {
    pub module: String,
    pub dim: usize,
    pub dim_h0: usize,
    pub dim_h1: usize,
    pub dim_h2: usize,
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub euler_defect: i64,
    pub z1_defect: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub ambient: String,
    pub genus: u32,
    pub euler_characteristic: i64,
    pub virtual_dimension: i64,
    pub smooth: bool,
    pub modules: Vec<ModuleCohomology>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToledoEntry {
    pub module: String,
    pub summary: RootSummary,
    pub dim_h0: usize,
    pub dim_h2: usize,
    pub coboundary_pairing: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToledoReport {
    pub ambient: String,
    pub genus: u32,
    pub euler_characteristic: i64,
    pub entries: Vec<ToledoEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalancedReport {
    pub problem: BalanceProblem,
    pub outcome: BalanceOutcome,
    pub certificate_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub name: String,
    pub ambient: String,
    pub object: String,
    pub expected: ExpectedEntry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub cases: Vec<CatalogRow>,
}

/// Round to [`SIGNIFICANT_DIGITS`] significant digits; idempotent.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x + 0.0;
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    s.parse::<f64>().unwrap_or(x) + 0.0
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().unwrap_or(0.0));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with fixed field order and rounded floats.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parse emitted JSON back into the typed report and render it again.
pub fn rerender<T: Serialize + DeserializeOwned>(text: &str) -> Result<String> {
    let parsed: T = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    to_json(&parsed)
}

/// Human-readable rendering.
pub trait Render {
    fn render_text(&self) -> String;
}

fn fmt_values(v: &[[f64; 2]]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|[re, im]| {
            let (re, im) = (round_significant(*re), round_significant(*im));
            match (re == 0.0, im == 0.0) {
                (true, true) => "0".into(),
                (false, true) => format!("{re:.6}"),
                (true, false) => format!("{im:.6}i"),
                (false, false) => format!("{re:.6}{:+.6}i", im),
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

impl<T: Render> Render for Envelope<T> {
    fn render_text(&self) -> String {
        let mut s = format!(
            "{} {} {} (seed {}, rank tol {:e}, cluster tol {:e})\n",
            self.tool, self.version, self.command, self.seed, self.tolerances.rank, self.tolerances.cluster
        );
        s.push_str(&self.report.render_text());
        s
    }
}

impl Render for DecomposeReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ambient {} (dim {})", self.ambient, self.dim_g);
        let _ = writeln!(s, "torus dim {}, zero space dim {}", self.torus_dim, self.zero_space_dim);
        if self.roots.is_empty() {
            let _ = writeln!(s, "no roots");
        }
        for (i, r) in self.roots.iter().enumerate() {
            let _ = writeln!(
                s,
                "root {i}: {} {} real dim {} (complex dim {}, orbit of {}), t_lambda {}",
                fmt_values(&r.values),
                r.kind,
                r.real_dim,
                r.complex_dim,
                r.orbit_size,
                fmt_values(&r.t_lambda)
            );
        }
        let _ = writeln!(s, "total {} of {}", self.total_dim, self.dim_g);
        s
    }
}

impl Render for CohomologyReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "ambient {}, genus {}, chi {}, virtual dimension {}, smooth {}",
            self.ambient, self.genus, self.euler_characteristic, self.virtual_dimension, self.smooth
        );
        let _ = writeln!(s, "{:<28} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4}", "module", "dim", "H0", "H1", "H2", "Z1", "B1");
        for m in &self.modules {
            let _ = writeln!(
                s,
                "{:<28} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4}",
                m.module, m.dim, m.dim_h0, m.dim_h1, m.dim_h2, m.dim_z1, m.dim_b1
            );
        }
        s
    }
}

fn toledo_line(s: &mut String, label: &str, r: &RootSummary) {
    match (r.signature, r.toledo) {
        (Some(sig), Some(t)) => {
            let _ = writeln!(
                s,
                "{label}: {} dim {} H1 {} signature {sig} T = {} slack {}{}",
                r.kind,
                r.root_space_dim,
                r.dim_h1,
                round_significant(t),
                round_significant(r.milnor_wood_slack),
                if r.definite { " (definite)" } else { "" }
            );
        }
        _ => {
            let _ = writeln!(
                s,
                "{label}: {} dim {} H1 {} complex form {}",
                r.kind,
                r.root_space_dim,
                r.dim_h1,
                if r.nondegenerate { "nondegenerate" } else { "degenerate" }
            );
        }
    }
}

impl Render for ToledoReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ambient {}, genus {}, chi {}", self.ambient, self.genus, self.euler_characteristic);
        if self.entries.is_empty() {
            let _ = writeln!(s, "no roots");
        }
        for e in &self.entries {
            let label = if e.summary.values.is_empty() {
                e.module.clone()
            } else {
                format!("{} {}", e.module, fmt_values(&e.summary.values))
            };
            toledo_line(&mut s, &label, &e.summary);
        }
        s
    }
}

fn certificate_text(c: &BalanceCertificate) -> String {
    match c {
        BalanceCertificate::Trivial => "N spans the space".into(),
        BalanceCertificate::Multipliers { mu } => format!("positive multipliers {mu:?}"),
        BalanceCertificate::Separating { functional } => format!("separating functional {functional:?}"),
    }
}

impl Render for BalancedReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "dim {}, |P| = {}, |N| = {}",
            self.problem.dim,
            self.problem.p.len(),
            self.problem.n.len()
        );
        let _ = writeln!(s, "balanced: {}", self.outcome.balanced);
        let _ = writeln!(s, "certificate: {}", certificate_text(&self.outcome.certificate));
        let _ = writeln!(s, "certificate residual {:e}", self.certificate_residual);
        s
    }
}

impl Render for FlexibilityReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ambient {} (dim {}), genus {}", self.ambient, self.dim_g, self.genus);
        let _ = writeln!(s, "relator residual {:e}", self.relator_residual);
        let _ = writeln!(
            s,
            "centralizer dim {}, reductive {}, center dim {}",
            self.centralizer_dim, self.reductive, self.center_dim
        );
        let _ = writeln!(
            s,
            "adjoint cohomology: Z1 {} vs virtual dimension {}, smooth {}",
            self.smoothness.dim_z1, self.smoothness.virtual_dimension, self.smoothness.smooth
        );
        if self.roots.is_empty() {
            let _ = writeln!(s, "no roots");
        }
        for r in &self.roots {
            toledo_line(&mut s, &fmt_values(&r.values), r);
        }
        let _ = writeln!(s, "P = {:?}", self.p);
        let _ = writeln!(s, "N = {:?}", self.n);
        if let Some(b) = &self.balance {
            let _ = writeln!(s, "balanced: {} ({})", b.balanced, certificate_text(&b.certificate));
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = writeln!(s, "verdict: {}", self.verdict);
        s
    }
}

impl Render for CatalogReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<13} {:<9} {:<13} {:<18} {:>4} {:>6}  verdict",
            "case", "ambient", "object", "centralizer", "dim", "center"
        );
        for c in &self.cases {
            let e = &c.expected;
            let _ = writeln!(
                s,
                "{:<13} {:<9} {:<13} {:<18} {:>4} {:>6}  {}{}",
                c.name,
                c.ambient,
                c.object,
                e.centralizer,
                e.centralizer_dim,
                e.center_dim,
                e.verdict,
                if e.computed { "" } else { " (not computed)" }
            );
        }
        s
    }
}
