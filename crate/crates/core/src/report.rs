//! The report document written by `raagh compute`.
//!
//! Field order is fixed by the struct layout, so JSON output is stable across
//! runs. Timings are optional and off by default, keeping reports
//! byte-for-byte reproducible. The JSON layout is described by
//! `schemas/report.schema.json`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::hbounds::{HReport, Provenance};
use crate::io::{serialize_graph, Format};
use crate::graph::Graph;
use crate::solver::SolverConfig;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub n: usize,
    pub edges: usize,
    /// SHA-256 of the canonical edge-list serialization.
    pub hash: String,
}

impl InputSummary {
    pub fn of(g: &Graph) -> Self {
        let canonical = serialize_graph(g, Format::EdgeList);
        let digest = Sha256::digest(canonical.as_bytes());
        let hash = digest.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        Self { n: g.vertex_count(), edges: g.edge_count(), hash }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Timings {
    pub parse_ms: f64,
    pub solve_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolverMeta {
    pub cap: usize,
    pub mode: String,
    pub workers: usize,
    pub strict: bool,
}

impl SolverMeta {
    pub fn of(cfg: &SolverConfig) -> Self {
        Self {
            cap: cfg.cap,
            mode: if cfg.heuristic { "heuristic" } else { "exhaustive" }.to_string(),
            workers: cfg.workers,
            strict: cfg.strict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDocument {
    pub schema_version: String,
    pub input: InputSummary,
    pub h_report: HReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    pub solver_meta: SolverMeta,
}

impl ReportDocument {
    pub fn new(g: &Graph, h_report: HReport, cfg: &SolverConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            input: InputSummary::of(g),
            h_report,
            timings: None,
            solver_meta: SolverMeta::of(cfg),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let r = &self.h_report;
        let mut out = String::new();
        let _ = writeln!(out, "graph      n={} edges={} sha256={}", self.input.n, self.input.edges, self.input.hash);
        let _ = writeln!(out, "betti      b1={} b2={} b4={}", r.b1, r.b2, r.b4);
        let m = &r.m2;
        let status = if m.exhaustive { "exhaustive" } else { "NOT exhaustive, lower bound only" };
        let _ = writeln!(out, "m2         {} ({status})", m.m2);
        if !m.exhaustive {
            let _ = writeln!(out, "m2 upper   {}", m.m2_upper);
        }
        let _ = writeln!(out, "witness    {}", if m.witness.is_empty() { "-".into() } else { m.witness.to_bit_string() });
        let _ = writeln!(out, "radical    {}", m.radical_dim);
        let _ = writeln!(out, "bounds     {} <= {} <= h <= {}", r.lower_trivial, r.lower_cohomological, r.upper);
        if let Some(c) = &r.certificate {
            let _ = writeln!(out, "family     {c}");
        }
        match r.exact {
            Some(e) if e.provenance == Provenance::ConjecturalMinimal => {
                let _ = writeln!(out, "h          {} (conjectural, {:?})", e.value, e.provenance);
            }
            Some(e) => {
                let _ = writeln!(out, "h          {} ({:?})", e.value, e.provenance);
            }
            None => {
                let _ = writeln!(out, "h          unknown");
            }
        }
        if let Some(d) = &r.decomposition {
            let _ = writeln!(out, "pieces     {} (free edges removed: {})", d.pieces.len(), d.removed_free_edges);
            for p in &d.pieces {
                let v = p.report.exact.map_or("?".to_string(), |e| e.value.to_string());
                let _ = writeln!(out, "  {:?} h={v}", p.vertices);
            }
            match d.aggregate_exact {
                Some(a) => {
                    let _ = writeln!(out, "aggregate  {a}");
                }
                None => {
                    let _ = writeln!(out, "aggregate  {}..={}", d.aggregate_lower, d.aggregate_upper);
                }
            }
        }
        let meta = &self.solver_meta;
        let _ = writeln!(out, "solver     mode={} cap={} workers={}", meta.mode, meta.cap, meta.workers);
        if let Some(t) = &self.timings {
            let _ = writeln!(out, "timings    parse={:.1}ms solve={:.1}ms total={:.1}ms", t.parse_ms, t.solve_ms, t.total_ms);
        }
        out
    }
}
