//! Generators and a recognizer for the graph families whose h-values are
//! known in closed form or by a minimality theorem.
//!
//! Vertex numbering of the generators:
//!
//! * `CliqueEdgeString { clique_size: s, count: k }`: clique `i` is the
//!   vertex range `(s-2)i ..= (s-2)i + s - 1`, so consecutive cliques share the
//!   edge on their last two / first two vertices.
//! * `FaceString { count: k }`: `k + 3` vertices, `i ~ j` iff `0 < |i-j| ≤ 3`;
//!   clique `i` is `{i, i+1, i+2, i+3}`.
//! * `Grid { shape }`: each cell `(r, c)` is a 4-clique on the lattice points
//!   `(r, c), (r, c+1), (r+1, c), (r+1, c+1)`; lattice points are numbered in
//!   `(row, col)` order.
//! * `HexThickTriangle { side: t }`: the triangular lattice of side `t`,
//!   row `r` (from the base) holding `t + 1 - r` points, numbered row by row.
//!   All lattice edges are present, and for every interior lattice edge the
//!   two apexes of its adjacent triangles are joined by a long edge.
//! * `FiveFourEdgeShare`: a 5-clique on `0..5` and a 4-clique on
//!   `{3, 4, 5, 6}` sharing the edge `{3, 4}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::isomorphism::is_isomorphic;

/// A set of unit cells `(row, col)` of the square lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GridShape(BTreeSet<(u32, u32)>);

impl GridShape {
    pub fn new(cells: impl IntoIterator<Item = (u32, u32)>) -> Self {
        Self(cells.into_iter().collect())
    }

    pub fn rectangle(rows: u32, cols: u32) -> Self {
        Self::new((0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))))
    }

    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cells connected through shared sides.
    pub fn is_edge_connected(&self) -> bool {
        let Some(&first) = self.0.iter().next() else { return false };
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some((r, c)) = stack.pop() {
            let around = [
                (r.wrapping_sub(1), c),
                (r + 1, c),
                (r, c.wrapping_sub(1)),
                (r, c + 1),
            ];
            for cell in around {
                if self.0.contains(&cell) && seen.insert(cell) {
                    stack.push(cell);
                }
            }
        }
        seen.len() == self.0.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", rename_all_fields = "camelCase")]
pub enum FamilyCertificate {
    Edgeless { n: usize },
    Complete { n: usize },
    CliqueEdgeString { clique_size: usize, count: usize },
    FaceString { count: usize },
    Grid { shape: GridShape },
    HexThickTriangle { side: usize },
    FiveFourEdgeShare,
}

impl fmt::Display for FamilyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Edgeless { n } => write!(f, "edgeless({n})"),
            Self::Complete { n } => write!(f, "complete({n})"),
            Self::CliqueEdgeString { clique_size, count } => {
                write!(f, "clique-string(size={clique_size}, count={count})")
            }
            Self::FaceString { count } => write!(f, "face-string({count})"),
            Self::Grid { shape } => write!(f, "grid({} cells)", shape.len()),
            Self::HexThickTriangle { side } => write!(f, "hex-triangle({side})"),
            Self::FiveFourEdgeShare => write!(f, "five-four-edge-share"),
        }
    }
}

fn clique_on(g: &mut Graph, vertices: &[usize]) {
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            g.add_edge(u, v);
        }
    }
}

fn clique_edge_string(size: usize, count: usize) -> Graph {
    let step = size - 2;
    let mut g = Graph::empty(step * count + 2);
    for i in 0..count {
        let members: Vec<usize> = (step * i..step * i + size).collect();
        clique_on(&mut g, &members);
    }
    g
}

fn face_string(count: usize) -> Graph {
    let n = count + 3;
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n.min(u + 4) {
            g.add_edge(u, v);
        }
    }
    g
}

fn grid(shape: &GridShape) -> Graph {
    let mut points = BTreeSet::new();
    for (r, c) in shape.cells() {
        for p in [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)] {
            points.insert(p);
        }
    }
    let index: BTreeMap<(u32, u32), usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut g = Graph::empty(points.len());
    for (r, c) in shape.cells() {
        let corners = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)].map(|p| index[&p]);
        for i in 0..4 {
            for j in i + 1..4 {
                g.add_edge(corners[i], corners[j]);
            }
        }
    }
    g
}

fn hex_triangle(side: usize) -> Graph {
    // Point (r, i): row r from the base, position i in 0..=side-r.
    let mut index = BTreeMap::new();
    for r in 0..=side {
        for i in 0..=side - r {
            let next = index.len();
            index.insert((r, i), next);
        }
    }
    let mut g = Graph::empty(index.len());
    let at = |r: usize, i: usize| index.get(&(r, i)).copied();
    // Lattice triangles as vertex triples.
    let mut triangles = Vec::new();
    for r in 0..side {
        for i in 0..side - r {
            triangles.push([at(r, i), at(r, i + 1), at(r + 1, i)].map(Option::unwrap));
            if i + 1 < side - r {
                triangles.push([at(r, i + 1), at(r + 1, i), at(r + 1, i + 1)].map(Option::unwrap));
            }
        }
    }
    let mut apexes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for t in &triangles {
        for k in 0..3 {
            let (u, v) = (t[k].min(t[(k + 1) % 3]), t[k].max(t[(k + 1) % 3]));
            g.add_edge(u, v);
            apexes.entry((u, v)).or_default().push(t[(k + 2) % 3]);
        }
    }
    for pair in apexes.values() {
        if let [a, b] = pair[..] {
            g.add_edge(a, b);
        }
    }
    g
}

fn five_four_edge_share() -> Graph {
    let mut g = Graph::empty(7);
    clique_on(&mut g, &[0, 1, 2, 3, 4]);
    clique_on(&mut g, &[3, 4, 5, 6]);
    g
}

/// Builds the family member described by `cert` and attaches the certificate.
pub fn generate_family(cert: &FamilyCertificate) -> Result<Graph> {
    let bad = |msg: String| Err(Error::UnsupportedFamily(msg));
    let g = match cert {
        FamilyCertificate::Edgeless { n } => Graph::empty(*n),
        FamilyCertificate::Complete { n } => {
            if *n == 0 {
                return bad("complete graph needs n >= 1".into());
            }
            Graph::complete(*n)
        }
        &FamilyCertificate::CliqueEdgeString { clique_size, count } => {
            if !(4..=7).contains(&clique_size) || count == 0 {
                return bad(format!(
                    "clique string needs size in 4..=7 and count >= 1, got size {clique_size}, count {count}"
                ));
            }
            clique_edge_string(clique_size, count)
        }
        &FamilyCertificate::FaceString { count } => {
            if count < 2 {
                return bad(format!("face string needs count >= 2, got {count}"));
            }
            face_string(count)
        }
        FamilyCertificate::Grid { shape } => {
            if !shape.is_edge_connected() {
                return bad("grid shape must be a non-empty edge-connected set of cells".into());
            }
            grid(shape)
        }
        &FamilyCertificate::HexThickTriangle { side } => {
            if side == 0 {
                return bad("hex triangle needs side >= 1".into());
            }
            hex_triangle(side)
        }
        FamilyCertificate::FiveFourEdgeShare => five_four_edge_share(),
    };
    Ok(g.with_certificate(cert.clone()))
}

fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn matches(g: &Graph, cert: FamilyCertificate) -> Option<FamilyCertificate> {
    let model = generate_family(&cert).ok()?;
    is_isomorphic(g, &model).then_some(cert)
}

/// Structural recognition for the families with a closed-form value.
///
/// Grid and Hex members are not recognized; they must arrive with a
/// certificate.
pub fn recognize_family(g: &Graph) -> Option<FamilyCertificate> {
    let n = g.vertex_count();
    let e = g.edge_count();
    if e == 0 {
        return Some(FamilyCertificate::Edgeless { n });
    }
    if e == binomial2(n) {
        return Some(FamilyCertificate::Complete { n });
    }
    if n >= 5 && e == 3 * (n - 3) + 3 {
        if let Some(c) = matches(g, FamilyCertificate::FaceString { count: n - 3 }) {
            return Some(c);
        }
    }
    for size in 4..=7 {
        let step = size - 2;
        if n < 2 || !(n - 2).is_multiple_of(step) {
            continue;
        }
        let count = (n - 2) / step;
        if count >= 2 && e == (binomial2(size) - 1) * count + 1 {
            if let Some(c) = matches(g, FamilyCertificate::CliqueEdgeString { clique_size: size, count })
            {
                return Some(c);
            }
        }
    }
    if n == 7 && e == 15 {
        return matches(g, FamilyCertificate::FiveFourEdgeShare);
    }
    None
}
