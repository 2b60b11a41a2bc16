//! JSON and table renderings of a verdict.

use std::fmt::Write as _;

use quatsym_core::{AlgebraSpec, Verdict};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecReport {
    Quaternion { field: String, a: i64, b: i64 },
    Symbol { q: i64, alpha: i64, p: i64 },
}

impl From<AlgebraSpec> for SpecReport {
    fn from(spec: AlgebraSpec) -> Self {
        match spec {
            AlgebraSpec::QuaternionQ { a, b } => SpecReport::Quaternion { field: "q".into(), a, b },
            AlgebraSpec::QuaternionQi { a, b } => SpecReport::Quaternion { field: "qi".into(), a, b },
            AlgebraSpec::Symbol { q, alpha, p } => SpecReport::Symbol { q, alpha, p },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub place: String,
    pub trivial: bool,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// The spec after removing square (or q-th power) factors.
    pub reduced: String,
    pub local: Vec<LocalReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub schema: u32,
    pub spec: SpecReport,
    pub status: String,
    pub ramified: Vec<String>,
    pub discriminant: Option<i128>,
    pub fast_path: Option<String>,
    pub certificate: Option<Certificate>,
    pub ms: f64,
}

impl VerdictReport {
    pub fn new(v: &Verdict, ms: f64) -> Self {
        VerdictReport {
            schema: SCHEMA,
            spec: v.spec.into(),
            status: v.status.as_str().into(),
            ramified: v.ramified.iter().map(ToString::to_string).collect(),
            discriminant: v.discriminant,
            fast_path: v.fast_path.map(|f| f.name().into()),
            certificate: Some(Certificate {
                reduced: v.reduced.to_string(),
                local: v
                    .evidence
                    .iter()
                    .map(|e| LocalReport { place: e.place.to_string(), trivial: e.trivial, value: e.value })
                    .collect(),
                reason: v.reason.clone(),
            }),
            ms,
        }
    }

    pub fn spec_string(&self) -> String {
        match &self.spec {
            SpecReport::Quaternion { field, a, b } => format!("quaternion {field} {a} {b}"),
            SpecReport::Symbol { q, alpha, p } => format!("symbol q={q} {alpha} {p}"),
        }
    }

    pub fn table(&self) -> String {
        let dash = || "-".to_string();
        let mut rows: Vec<(&str, String)> = vec![
            ("spec", self.spec_string()),
            ("status", self.status.clone()),
            ("ramified", if self.ramified.is_empty() { dash() } else { self.ramified.join(" ") }),
            ("discriminant", self.discriminant.map_or_else(dash, |d| d.to_string())),
            ("fast_path", self.fast_path.clone().unwrap_or_else(dash)),
        ];
        if let Some(c) = &self.certificate {
            rows.push(("reduced", c.reduced.clone()));
            for l in &c.local {
                let mark = if l.trivial { "trivial" } else { "NONTRIVIAL" };
                rows.push(("local", format!("{:<14} {:>6}  {mark}", l.place, l.value)));
            }
            if let Some(r) = &c.reason {
                rows.push(("reason", r.clone()));
            }
        }
        rows.push(("ms", format!("{:.3}", self.ms)));
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<13} {v}");
        }
        out
    }
}
