//! Bounds and exact values for h(G).
//!
//! Every graph gets the sandwich `b₂ ≤ 2b₂ − m₂ ≤ h ≤ 2b₂`. An exact value is
//! attached from, in order: trivial H⁴, the family catalog, or a
//! decomposition into theorem-exact pieces joined by free edges. Failing
//! those, the conjectured value `2b₂ − m₂` is attached with its own
//! provenance so it cannot be mistaken for a proven one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{generate_family, recognize_family, FamilyCertificate};
use crate::form::{build_cup_form, substitute, AlphaVector};
use crate::graph::{
    betti, biconnected_blocks, classify_edges, connected_components, Graph,
};
use crate::solver::{compute_m2, solve, M2Result, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    TrivialH4,
    FreeAbelian,
    GridThm,
    StringThm,
    HexThm,
    CliqueString5,
    CliqueString6,
    CliqueString7,
    FiveFourEdgeThm,
    DecompositionAggregate,
    ConjecturalMinimal,
}

impl Provenance {
    pub fn is_theorem(self) -> bool {
        self != Provenance::ConjecturalMinimal
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExactH {
    pub value: usize,
    pub provenance: Provenance,
    pub theorem: bool,
}

impl ExactH {
    fn new(value: usize, provenance: Provenance) -> Self {
        Self { value, provenance, theorem: provenance.is_theorem() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HReport {
    pub b1: usize,
    pub b2: usize,
    pub b4: usize,
    pub m2: M2Result,
    pub lower_trivial: usize,
    pub lower_cohomological: usize,
    pub upper: usize,
    pub exact: Option<ExactH>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<FamilyCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decomposition: Option<DecompositionReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Piece {
    /// Vertices of the parent graph spanned by the piece, ascending.
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub report: HReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionReport {
    pub removed_free_edges: usize,
    pub pieces: Vec<Piece>,
    pub aggregate_exact: Option<usize>,
    /// Σ piece lower bounds + 2r and Σ piece upper bounds + 2r.
    pub aggregate_lower: usize,
    pub aggregate_upper: usize,
}

impl DecompositionReport {
    /// True when the split actually separated something.
    pub fn is_nontrivial(&self) -> bool {
        self.removed_free_edges > 0 || self.pieces.len() > 1
    }
}

/// `(b₂, 2b₂ − m₂)`, with `m₂` replaced by a certified upper bound when the
/// search was not exhaustive so the bound stays valid.
pub fn lower_bound(g: &Graph, cfg: &SolverConfig) -> Result<(usize, usize)> {
    let m2 = solve(g, cfg)?;
    let b2 = g.edge_count();
    Ok((b2, 2 * b2 - m2.m2_upper))
}

pub fn upper_bound(g: &Graph) -> usize {
    2 * g.edge_count()
}

pub fn h_free_abelian(n: usize) -> usize {
    match n {
        3 => 6,
        5 => 14,
        _ => {
            let c = n * n.saturating_sub(1) / 2;
            c + c % 2
        }
    }
}

fn minimal_value(g: &Graph, cfg: &SolverConfig, all_ones_fallback: bool) -> Result<usize> {
    let b2 = g.edge_count();
    match compute_m2(g, cfg) {
        Ok(r) => Ok(2 * b2 - r.m2),
        Err(Error::CapExceeded { .. }) => {
            let h = solve(g, &SolverConfig { strict: false, ..cfg.clone() })?;
            if h.exhaustive {
                Ok(2 * b2 - h.m2)
            } else if all_ones_fallback {
                let t = build_cup_form(g);
                let rank = substitute(&t, &AlphaVector::ones(t.clique_count()))?.rank();
                Ok(2 * b2 - rank)
            } else {
                Err(Error::NotCertified(format!(
                    "m2 not certified: best {} below bound {}",
                    h.m2, h.m2_upper
                )))
            }
        }
        Err(e) => Err(e),
    }
}

/// Exact h for a catalog member.
pub fn h_family(cert: &FamilyCertificate, cfg: &SolverConfig) -> Result<(usize, Provenance)> {
    use FamilyCertificate as F;
    Ok(match *cert {
        F::Edgeless { .. } => (0, Provenance::TrivialH4),
        F::Complete { n } => (h_free_abelian(n), Provenance::FreeAbelian),
        F::FaceString { count: k } => {
            (if k % 2 == 0 { 3 * k + 6 } else { 3 * k + 5 }, Provenance::StringThm)
        }
        F::CliqueEdgeString { clique_size, count } => {
            let k = count;
            match clique_size {
                4 => (minimal_value(&generate_family(cert)?, cfg, true)?, Provenance::GridThm),
                5 => (12 * k + 2, Provenance::CliqueString5),
                6 => (14 * k + 2, Provenance::CliqueString6),
                7 => (20 * k + 2, Provenance::CliqueString7),
                s => return Err(Error::UnsupportedFamily(format!("{s}-clique string"))),
            }
        }
        F::Grid { .. } => (minimal_value(&generate_family(cert)?, cfg, true)?, Provenance::GridThm),
        F::HexThickTriangle { .. } => {
            (minimal_value(&generate_family(cert)?, cfg, false)?, Provenance::HexThm)
        }
        F::FiveFourEdgeShare => (18, Provenance::FiveFourEdgeThm),
    })
}

/// Report for a graph without trying to split it further.
fn evaluate(g: &Graph, cfg: &SolverConfig) -> Result<HReport> {
    let b = betti(g);
    let at = |k: usize| b.get(k).copied().unwrap_or(0);
    let b2 = g.edge_count();
    let m2 = solve(g, cfg)?;
    let lower_cohomological = 2 * b2 - m2.m2_upper;
    let mut report = HReport {
        b1: g.vertex_count(),
        b2,
        b4: at(4),
        lower_trivial: b2,
        lower_cohomological,
        upper: upper_bound(g),
        exact: None,
        certificate: None,
        decomposition: None,
        m2,
    };
    if report.b4 == 0 {
        report.exact = Some(ExactH::new(2 * b2, Provenance::TrivialH4));
        return Ok(report);
    }
    let cert = g.certificate().cloned().or_else(|| recognize_family(g));
    if let Some(cert) = cert {
        match h_family(&cert, cfg) {
            Ok((value, provenance)) => report.exact = Some(ExactH::new(value, provenance)),
            Err(Error::NotCertified(_)) => {}
            Err(e) => return Err(e),
        }
        report.certificate = Some(cert);
    }
    Ok(report)
}

fn conjectural(report: &mut HReport) {
    if report.exact.is_none() && report.m2.exhaustive {
        report.exact =
            Some(ExactH::new(report.lower_cohomological, Provenance::ConjecturalMinimal));
    }
}

/// Vertex sets of the pieces: blocks of the graph left after deleting free
/// edges, with isolated vertices as single-vertex pieces.
fn piece_vertex_sets(stripped: &Graph) -> Vec<Vec<usize>> {
    let mut sets = Vec::new();
    for comp in connected_components(stripped) {
        if comp.vertices.len() == 1 {
            sets.push(comp.vertices.clone());
            continue;
        }
        for block in biconnected_blocks(&comp.graph) {
            let mut vs: Vec<usize> = block.iter().map(|&v| comp.vertices[v]).collect();
            vs.sort_unstable();
            sets.push(vs);
        }
    }
    sets.sort();
    sets
}

pub fn decompose_h(g: &Graph, cfg: &SolverConfig) -> Result<DecompositionReport> {
    let classes = classify_edges(g);
    let mut stripped = Graph::empty(g.vertex_count());
    for &(u, v) in &classes.in_four_clique {
        stripped.add_edge(u, v);
    }
    let sets = piece_vertex_sets(&stripped);
    let graphs: Vec<Graph> = sets.iter().map(|vs| stripped.induced(vs)).collect();
    let reports: Vec<Result<HReport>> = if graphs.len() > 1 && cfg.workers > 1 {
        // Pieces share the worker budget; each gets its own solver pool.
        let inner = SolverConfig {
            workers: (cfg.workers / graphs.len()).max(1),
            ..cfg.clone()
        };
        std::thread::scope(|s| {
            let handles: Vec<_> =
                graphs.iter().map(|pg| s.spawn(|| evaluate(pg, &inner))).collect();
            handles.into_iter().map(|h| h.join().expect("piece evaluation panicked")).collect()
        })
    } else {
        graphs.iter().map(|pg| evaluate(pg, cfg)).collect()
    };
    let r = classes.free.len();
    let mut pieces = Vec::with_capacity(sets.len());
    for ((vertices, pg), report) in sets.into_iter().zip(&graphs).zip(reports) {
        let mut report = report?;
        conjectural(&mut report);
        let edges = pg.edges().into_iter().map(|(a, b)| (vertices[a], vertices[b])).collect();
        pieces.push(Piece { vertices, edges, report });
    }
    let aggregate_exact = pieces
        .iter()
        .map(|p| p.report.exact.filter(|e| e.theorem).map(|e| e.value))
        .sum::<Option<usize>>()
        .map(|s| s + 2 * r);
    let aggregate_lower = pieces
        .iter()
        .map(|p| p.report.exact.filter(|e| e.theorem).map_or(p.report.lower_cohomological, |e| e.value))
        .sum::<usize>()
        + 2 * r;
    let aggregate_upper = pieces
        .iter()
        .map(|p| p.report.exact.filter(|e| e.theorem).map_or(p.report.upper, |e| e.value))
        .sum::<usize>()
        + 2 * r;
    Ok(DecompositionReport {
        removed_free_edges: r,
        pieces,
        aggregate_exact,
        aggregate_lower,
        aggregate_upper,
    })
}

/// Full report. Only fails in strict mode, when the solver cap is exceeded.
pub fn compute_h(g: &Graph, cfg: &SolverConfig) -> Result<HReport> {
    let mut report = evaluate(g, cfg)?;
    if report.exact.is_none() {
        let d = decompose_h(g, cfg)?;
        if d.is_nontrivial() {
            if let Some(v) = d.aggregate_exact {
                report.exact = Some(ExactH::new(v, Provenance::DecompositionAggregate));
            }
            report.decomposition = Some(d);
        }
    }
    conjectural(&mut report);
    Ok(report)
}
