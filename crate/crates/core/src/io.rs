//! Graph file formats.
//!
//! * Edge list: one `u v` pair of 0-based integers per line.
//! * Adjacency CSV: a square matrix of `0`/`1` entries.
//! * JSON: `{"vertices": n, "edges": [[u, v], ...], "certificate": ...}`.
//!
//! In the two text formats `#` starts a comment. Three comment directives
//! carry extra data: `# vertices N` fixes the vertex count (ids must then be
//! below `N`), `# certificate {json}` attaches a family certificate, and
//! `# label i text` names vertex `i`. Without `# vertices`, edge-list ids are
//! compacted to `0..n` in ascending order and the original ids become labels.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::FamilyCertificate;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    EdgeList,
    AdjacencyCsv,
    Json,
}

impl Format {
    /// Guesses from a file extension: `.csv`, `.json`, anything else is an
    /// edge list.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Self::AdjacencyCsv,
            Some("json") => Self::Json,
            _ => Self::EdgeList,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "edges" | "edgelist" => Ok(Self::EdgeList),
            "csv" => Ok(Self::AdjacencyCsv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format {other:?} (expected edges, csv or json)")),
        }
    }
}

/// Where a parse error happened: a 1-based line, or an edge of a JSON list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pos {
    Line(usize),
    Edge(usize),
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pos::Line(l) => write!(f, "line {l}"),
            Pos::Edge(i) => write!(f, "edge {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{at}: self-loop at vertex {vertex}")]
    SelfLoop { at: Pos, vertex: usize },
    #[error("{at}: duplicate edge {u} {v}")]
    DuplicateEdge { at: Pos, u: usize, v: usize },
    #[error("{at}: asymmetric matrix at ({row}, {col})")]
    Asymmetric { at: Pos, row: usize, col: usize },
    #[error("{at}: nonzero diagonal at index {index}")]
    NonzeroDiagonal { at: Pos, index: usize },
    #[error("{at}: vertex {vertex} out of range for {n} vertices")]
    OutOfRange { at: Pos, vertex: usize, n: usize },
    #[error("{at}: bad entry {found:?}")]
    BadEntry { at: Pos, found: String },
    #[error("{at}: row has {found} entries, expected {expected}")]
    NotSquare { at: Pos, expected: usize, found: usize },
    #[error("{at}: bad directive: {msg}")]
    BadDirective { at: Pos, msg: String },
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Default)]
struct Directives {
    vertices: Option<usize>,
    certificate: Option<FamilyCertificate>,
    labels: BTreeMap<usize, (usize, String)>,
}

impl Directives {
    /// Reads a comment line; ordinary comments are ignored.
    fn read(&mut self, comment: &str, line: usize) -> Result<(), ParseError> {
        let bad = |msg: String| ParseError::BadDirective { at: Pos::Line(line), msg };
        let body = comment.trim();
        let (word, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match word {
            "vertices" => {
                let n = rest.parse().map_err(|_| bad(format!("vertex count {rest:?}")))?;
                self.vertices = Some(n);
            }
            "certificate" => {
                let c = serde_json::from_str(rest).map_err(|e| bad(e.to_string()))?;
                self.certificate = Some(c);
            }
            "label" => {
                let (i, text) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let i = i.parse().map_err(|_| bad(format!("label index {i:?}")))?;
                self.labels.insert(i, (line, text.trim().to_string()));
            }
            _ => {}
        }
        Ok(())
    }

    fn apply(self, g: &mut Graph) -> Result<(), ParseError> {
        let n = g.vertex_count();
        if !self.labels.is_empty() {
            let mut labels: Vec<String> = match g.labels() {
                Some(l) => l.to_vec(),
                None => (0..n).map(|v| v.to_string()).collect(),
            };
            for (i, (line, text)) in self.labels {
                if i >= n {
                    return Err(ParseError::OutOfRange { at: Pos::Line(line), vertex: i, n });
                }
                labels[i] = text;
            }
            g.set_labels(Some(labels));
        }
        g.set_certificate(self.certificate);
        Ok(())
    }
}

fn split_comment(line: &str) -> (&str, Option<&str>) {
    match line.find('#') {
        Some(i) => (&line[..i], Some(&line[i + 1..])),
        None => (line, None),
    }
}

struct EdgeSet {
    seen: HashSet<(usize, usize)>,
    edges: Vec<(usize, usize)>,
}

impl EdgeSet {
    fn new() -> Self {
        Self { seen: HashSet::new(), edges: Vec::new() }
    }

    fn push(&mut self, u: usize, v: usize, at: Pos) -> Result<(), ParseError> {
        if u == v {
            return Err(ParseError::SelfLoop { at, vertex: u });
        }
        if !self.seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge { at, u, v });
        }
        self.edges.push((u, v));
        Ok(())
    }
}

fn parse_edge_list(src: &str) -> Result<Graph, ParseError> {
    let mut dir = Directives::default();
    let mut edges = EdgeSet::new();
    let mut lines = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let (data, comment) = split_comment(raw);
        if let Some(c) = comment {
            if data.trim().is_empty() {
                dir.read(c, line)?;
            }
        }
        let tokens: Vec<&str> = data.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 2 {
            return Err(ParseError::BadEntry { at: Pos::Line(line), found: data.trim().into() });
        }
        let mut ids = [0usize; 2];
        for (slot, tok) in ids.iter_mut().zip(&tokens) {
            *slot = tok
                .parse()
                .map_err(|_| ParseError::BadEntry { at: Pos::Line(line), found: tok.to_string() })?;
        }
        edges.push(ids[0], ids[1], Pos::Line(line))?;
        lines.push(line);
    }
    let mut g = match dir.vertices {
        Some(n) => {
            for (&(u, v), &line) in edges.edges.iter().zip(&lines) {
                if u.max(v) >= n {
                    return Err(ParseError::OutOfRange { at: Pos::Line(line), vertex: u.max(v), n });
                }
            }
            Graph::from_edges(n, &edges.edges)
        }
        None => {
            let ids: BTreeSet<usize> = edges.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            let index: BTreeMap<usize, usize> =
                ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
            let compact: Vec<_> = edges.edges.iter().map(|&(u, v)| (index[&u], index[&v])).collect();
            let mut g = Graph::from_edges(ids.len(), &compact);
            if index.iter().any(|(&id, &i)| id != i) {
                g.set_labels(Some(ids.iter().map(|id| id.to_string()).collect()));
            }
            g
        }
    };
    dir.apply(&mut g)?;
    Ok(g)
}

fn parse_csv(src: &str) -> Result<Graph, ParseError> {
    let mut dir = Directives::default();
    let mut rows: Vec<(usize, Vec<bool>)> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let (data, comment) = split_comment(raw);
        if let Some(c) = comment {
            if data.trim().is_empty() {
                dir.read(c, line)?;
            }
        }
        if data.trim().is_empty() {
            continue;
        }
        let row = data
            .split(',')
            .map(|cell| match cell.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(ParseError::BadEntry { at: Pos::Line(line), found: other.into() }),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        rows.push((line, row));
    }
    let n = rows.len();
    for (line, row) in &rows {
        if row.len() != n {
            return Err(ParseError::NotSquare { at: Pos::Line(*line), expected: n, found: row.len() });
        }
    }
    let mut g = Graph::empty(n);
    for (r, (line, row)) in rows.iter().enumerate() {
        let at = Pos::Line(*line);
        if row[r] {
            return Err(ParseError::NonzeroDiagonal { at, index: r });
        }
        for c in 0..n {
            if row[c] != rows[c].1[r] {
                return Err(ParseError::Asymmetric { at, row: r, col: c });
            }
            if row[c] && r < c {
                g.add_edge(r, c);
            }
        }
    }
    if let Some(v) = dir.vertices {
        if v != n {
            return Err(ParseError::BadDirective {
                at: Pos::Line(1),
                msg: format!("vertices {v} but matrix is {n}x{n}"),
            });
        }
    }
    dir.apply(&mut g)?;
    Ok(g)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    certificate: Option<FamilyCertificate>,
}

fn parse_json(src: &str) -> Result<Graph, ParseError> {
    let j: JsonGraph = serde_json::from_str(src).map_err(|e| ParseError::Json(e.to_string()))?;
    let mut edges = EdgeSet::new();
    for (i, &[u, v]) in j.edges.iter().enumerate() {
        if u.max(v) >= j.vertices {
            return Err(ParseError::OutOfRange { at: Pos::Edge(i), vertex: u.max(v), n: j.vertices });
        }
        edges.push(u, v, Pos::Edge(i))?;
    }
    let mut g = Graph::from_edges(j.vertices, &edges.edges);
    if let Some(labels) = j.labels {
        if labels.len() != j.vertices {
            return Err(ParseError::Json(format!(
                "{} labels for {} vertices",
                labels.len(),
                j.vertices
            )));
        }
        g.set_labels(Some(labels));
    }
    g.set_certificate(j.certificate);
    Ok(g)
}

pub fn parse_graph(src: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::EdgeList => parse_edge_list(src),
        Format::AdjacencyCsv => parse_csv(src),
        Format::Json => parse_json(src),
    }
}

fn write_directives(out: &mut String, g: &Graph) {
    let _ = writeln!(out, "# vertices {}", g.vertex_count());
    if let Some(c) = g.certificate() {
        let _ = writeln!(out, "# certificate {}", serde_json::to_string(c).expect("serializable"));
    }
    if let Some(labels) = g.labels() {
        for (i, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "# label {i} {l}");
        }
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::EdgeList => {
            write_directives(&mut out, g);
            for (u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        Format::AdjacencyCsv => {
            write_directives(&mut out, g);
            for u in 0..g.vertex_count() {
                let row: Vec<&str> = (0..g.vertex_count())
                    .map(|v| if g.has_edge(u, v) { "1" } else { "0" })
                    .collect();
                let _ = writeln!(out, "{}", row.join(","));
            }
        }
        Format::Json => {
            let j = JsonGraph {
                vertices: g.vertex_count(),
                edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
                labels: g.labels().map(<[String]>::to_vec),
                certificate: g.certificate().cloned(),
            };
            out = serde_json::to_string_pretty(&j).expect("serializable");
            out.push('\n');
        }
    }
    out
}

/// Graphviz export: undirected, plain edges, vertices named 1-based or by label.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.vertex_count() {
        let name = g.vertex_name(v).replace('\\', "\\\\").replace('"', "\\\"");
        let _ = writeln!(out, "  {v} [label=\"{name}\"];");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX42_CSV: &str = "0,1,1,1,0\n1,0,1,1,1\n1,1,0,1,1\n1,1,1,0,1\n0,1,1,1,0\n";

    #[test]
    fn path_from_edge_list() {
        let g = parse_graph("0 1\n1 2", Format::EdgeList).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert!(g.labels().is_none());
    }

    #[test]
    fn shared_triangle_csv() {
        let g = parse_graph(EX42_CSV, Format::AdjacencyCsv).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 9));
    }

    #[test]
    fn distinct_errors() {
        let err = |s: &str, f| parse_graph(s, f).unwrap_err();
        assert!(matches!(
            err("0,1\n1,1\n", Format::AdjacencyCsv),
            ParseError::NonzeroDiagonal { at: Pos::Line(2), index: 1 }
        ));
        assert!(err("0,1\n1,1\n", Format::AdjacencyCsv).to_string().contains("nonzero diagonal"));
        assert!(matches!(
            err("0,1\n0,0\n", Format::AdjacencyCsv),
            ParseError::Asymmetric { at: Pos::Line(1), row: 0, col: 1 }
        ));
        assert!(matches!(
            err("0,1\n1,0,0\n", Format::AdjacencyCsv),
            ParseError::NotSquare { at: Pos::Line(2), .. }
        ));
        assert!(matches!(err("0 1\n# c\n2 2\n", Format::EdgeList), ParseError::SelfLoop {
            at: Pos::Line(3),
            vertex: 2
        }));
        assert!(matches!(
            err("0 1\n1 0\n", Format::EdgeList),
            ParseError::DuplicateEdge { at: Pos::Line(2), .. }
        ));
        assert!(matches!(
            err("# vertices 2\n0 2\n", Format::EdgeList),
            ParseError::OutOfRange { at: Pos::Line(2), vertex: 2, n: 2 }
        ));
        assert!(matches!(err("0 x\n", Format::EdgeList), ParseError::BadEntry { .. }));
        assert!(matches!(
            err(r#"{"vertices":2,"edges":[[0,1],[1,1]]}"#, Format::Json),
            ParseError::SelfLoop { at: Pos::Edge(1), .. }
        ));
    }

    #[test]
    fn sparse_ids_compact_to_labels() {
        let g = parse_graph("10 20\n20 5\n", Format::EdgeList).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.labels().unwrap(), ["5", "10", "20"]);
        assert!(g.has_edge(0, 2) && g.has_edge(1, 2));
    }

    #[test]
    fn round_trip_all_formats() {
        let mut g = crate::family::generate_family(&FamilyCertificate::FaceString { count: 3 })
            .unwrap();
        g.set_labels(Some((0..6).map(|i| format!("v{i}")).collect()));
        for f in [Format::EdgeList, Format::AdjacencyCsv, Format::Json] {
            let text = serialize_graph(&g, f);
            assert_eq!(parse_graph(&text, f).unwrap(), g, "{f:?}");
        }
    }

    #[test]
    fn dot_export() {
        let dot = to_dot(&Graph::complete(3));
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
