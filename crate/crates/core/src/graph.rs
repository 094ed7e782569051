//! Finite simple graphs, clique enumeration and the structural splits used by
//! the decomposition theorems.
//!
//! Vertices are `0..n`. Every listing (edges, cliques) is in lexicographic
//! order of increasing vertex tuples, which is the nested-loop order
//! `i < j < k < l` used to index the cup-product form.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::family::FamilyCertificate;
use crate::gf2::BitVec;

pub type Edge = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BitVec>,
    labels: Option<Vec<String>>,
    certificate: Option<FamilyCertificate>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![BitVec::zeros(n); n], labels: None, certificate: None }
    }

    /// Builds a graph from an edge list.
    ///
    /// # Panics
    /// On self-loops, duplicate edges or endpoints `>= n`; parsers check these
    /// with proper errors before getting here.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            assert!(g.add_edge(u, v), "duplicate edge ({u}, {v})");
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Inserts `{u, v}`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        let n = self.vertex_count();
        assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} vertices");
        assert_ne!(u, v, "self-loop at {u}");
        if self.adj[u].get(v) {
            return false;
        }
        self.adj[u].set(v, true);
        self.adj[v].set(u, true);
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
        true
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitVec::count_ones).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].get(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitVec {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones()
    }

    /// All edges `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, row) in self.adj.iter().enumerate() {
            out.extend(row.iter_ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        if let Some(l) = &labels {
            assert_eq!(l.len(), self.vertex_count(), "one label per vertex");
        }
        self.labels = labels.filter(|l| !l.is_empty());
    }

    /// Display name of a vertex: its label, or the 1-based index.
    pub fn vertex_name(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => (v + 1).to_string(),
        }
    }

    pub fn certificate(&self) -> Option<&FamilyCertificate> {
        self.certificate.as_ref()
    }

    pub fn set_certificate(&mut self, cert: Option<FamilyCertificate>) {
        self.certificate = cert;
    }

    pub fn with_certificate(mut self, cert: FamilyCertificate) -> Self {
        self.certificate = Some(cert);
        self
    }

    /// Subgraph induced on `vertices` (kept in the given order). Labels carry
    /// over; the certificate does not.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        if let Some(l) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| l[v].clone()).collect());
        }
        g
    }

    /// Disjoint union; the vertices of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut g = Graph::empty(shift + other.vertex_count());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift);
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Clique(Vec<usize>);

impl Clique {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// All `k`-cliques of a graph in lexicographic order, with reverse lookup.
#[derive(Clone, Debug)]
pub struct CliqueIndex {
    k: usize,
    cliques: Vec<Clique>,
    position: HashMap<Vec<usize>, usize>,
}

impl CliqueIndex {
    fn new(k: usize, cliques: Vec<Clique>) -> Self {
        let position = cliques.iter().enumerate().map(|(i, c)| (c.0.clone(), i)).collect();
        Self { k, cliques, position }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn get(&self, i: usize) -> &Clique {
        &self.cliques[i]
    }

    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    /// 0-based position of a sorted vertex tuple.
    pub fn position(&self, vertices: &[usize]) -> Option<usize> {
        self.position.get(vertices).copied()
    }
}

/// Ordered depth-first extension: each clique is grown only by vertices
/// larger than its last member that are adjacent to all members, so cliques
/// come out in lexicographic order.
fn extend_cliques(
    g: &Graph,
    current: &mut Vec<usize>,
    candidates: &BitVec,
    k: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if current.len() == k {
        visit(current);
        return;
    }
    let last = current.last().copied();
    for v in candidates.iter_ones() {
        if last.is_some_and(|l| v <= l) {
            continue;
        }
        let mut next = candidates.clone();
        for (w, a) in next.words_mut().iter_mut().zip(g.neighbors(v).words()) {
            *w &= a;
        }
        current.push(v);
        extend_cliques(g, current, &next, k, visit);
        current.pop();
    }
}

pub fn enumerate_cliques(g: &Graph, k: usize) -> CliqueIndex {
    assert!(k >= 1, "clique size must be positive");
    let mut out = Vec::new();
    let all = BitVec::ones(g.vertex_count());
    extend_cliques(g, &mut Vec::new(), &all, k, &mut |c| out.push(Clique(c.to_vec())));
    CliqueIndex::new(k, out)
}

/// Maximal cliques, each sorted ascending, in lexicographic order.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    fn and(a: &BitVec, b: &BitVec) -> BitVec {
        let mut out = a.clone();
        for (w, x) in out.words_mut().iter_mut().zip(b.words()) {
            *w &= x;
        }
        out
    }
    fn bk(g: &Graph, r: &mut Vec<usize>, p: BitVec, x: BitVec, out: &mut Vec<Vec<usize>>) {
        if p.is_zero() {
            if x.is_zero() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = p
            .iter_ones()
            .chain(x.iter_ones())
            .max_by_key(|&u| and(&p, g.neighbors(u)).count_ones())
            .expect("p is non-empty");
        let mut p = p;
        let mut x = x;
        let skip = g.neighbors(pivot).clone();
        let todo: Vec<usize> = p.iter_ones().filter(|&v| !skip.get(v)).collect();
        for v in todo {
            r.push(v);
            bk(g, r, and(&p, g.neighbors(v)), and(&x, g.neighbors(v)), out);
            r.pop();
            p.set(v, false);
            x.set(v, true);
        }
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n > 0 {
        bk(g, &mut Vec::new(), BitVec::ones(n), BitVec::zeros(n), &mut out);
    }
    out.sort();
    out
}

/// Betti numbers `b_0, …, b_dim` of the group: `b_k` is the number of
/// `k`-cliques for `k ≥ 1`. `b_0` is the number of connected components
/// (1 for the empty graph).
pub fn betti(g: &Graph) -> Vec<usize> {
    let mut counts = vec![0usize];
    fn walk(g: &Graph, depth: usize, last: Option<usize>, cand: &BitVec, counts: &mut Vec<usize>) {
        for v in cand.iter_ones() {
            if last.is_some_and(|l| v <= l) {
                continue;
            }
            if counts.len() <= depth + 1 {
                counts.push(0);
            }
            counts[depth + 1] += 1;
            let mut next = cand.clone();
            for (w, a) in next.words_mut().iter_mut().zip(g.neighbors(v).words()) {
                *w &= a;
            }
            walk(g, depth + 1, Some(v), &next, counts);
        }
    }
    walk(g, 0, None, &BitVec::ones(g.vertex_count()), &mut counts);
    counts[0] = connected_components(g).len().max(1);
    counts
}

/// A connected piece of a graph together with the original vertex of each
/// of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

/// Components ordered by smallest vertex; vertices within each ascending.
pub fn connected_components(g: &Graph) -> Vec<Component> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut members = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            for v in g.neighbors(u).iter_ones() {
                if !seen[v] {
                    seen[v] = true;
                    members.push(v);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        out.push(Component { graph: g.induced(&members), vertices: members });
    }
    out
}

struct Dfs<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    cut: BTreeSet<usize>,
    stack: Vec<Edge>,
    blocks: Vec<Vec<usize>>,
}

impl Dfs<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        let mut children = 0;
        for v in self.g.neighbors(u).iter_ones() {
            if self.disc[v] == 0 {
                children += 1;
                self.stack.push((u, v));
                self.visit(v, Some(u));
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    if parent.is_some() {
                        self.cut.insert(u);
                    }
                    let mut block = BTreeSet::new();
                    while let Some((a, b)) = self.stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    self.blocks.push(block.into_iter().collect());
                }
            } else if Some(v) != parent && self.disc[v] < self.disc[u] {
                self.stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
        if parent.is_none() && children > 1 {
            self.cut.insert(u);
        }
    }
}

fn run_dfs(g: &Graph) -> Dfs<'_> {
    let n = g.vertex_count();
    let mut dfs = Dfs {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        cut: BTreeSet::new(),
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for u in 0..n {
        if dfs.disc[u] == 0 {
            dfs.visit(u, None);
        }
    }
    dfs
}

/// Cut vertices of every component.
pub fn articulation_points(g: &Graph) -> BTreeSet<usize> {
    run_dfs(g).cut
}

/// Vertex sets of the biconnected blocks (maximal 2-connected subgraphs and
/// bridges). Isolated vertices belong to no block. Sorted by their vertex
/// lists.
pub fn biconnected_blocks(g: &Graph) -> Vec<Vec<usize>> {
    let mut blocks = run_dfs(g).blocks;
    blocks.sort();
    blocks
}

/// Edges split by membership in at least one 4-clique.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EdgeClasses {
    pub in_four_clique: Vec<Edge>,
    pub free: Vec<Edge>,
}

pub fn classify_edges(g: &Graph) -> EdgeClasses {
    let mut covered = BTreeSet::new();
    for c in enumerate_cliques(g, 4).cliques() {
        let v = c.vertices();
        for a in 0..4 {
            for b in a + 1..4 {
                covered.insert((v[a], v[b]));
            }
        }
    }
    let mut out = EdgeClasses::default();
    for e in g.edges() {
        if covered.contains(&e) {
            out.in_four_clique.push(e);
        } else {
            out.free.push(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximal_cliques_small() {
        assert_eq!(maximal_cliques(&shared_triangle()), vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4]]);
        let path = Graph::from_edges(4, &[(0, 1), (1, 2)]);
        assert_eq!(maximal_cliques(&path), vec![vec![0, 1], vec![1, 2], vec![3]]);
    }

    fn shared_triangle() -> Graph {
        // Two 4-cliques sharing the triangle {1, 2, 3}.
        Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        )
    }

    fn k6_minus_two_edges() -> Graph {
        // 5-clique on 0..5 and 4-clique {2, 3, 4, 5} sharing a face.
        let mut g = Graph::complete(6);
        for v in 0..2 {
            g.remove_edge(v, 5);
        }
        g
    }

    #[test]
    fn k4_edges() {
        assert_eq!(enumerate_cliques(&Graph::complete(4), 2).len(), 6);
    }

    #[test]
    fn shared_triangle_four_cliques() {
        let idx = enumerate_cliques(&shared_triangle(), 4);
        let got: Vec<&[usize]> = idx.cliques().iter().map(Clique::vertices).collect();
        assert_eq!(got, vec![&[0, 1, 2, 3][..], &[1, 2, 3, 4][..]]);
        assert_eq!(idx.position(&[1, 2, 3, 4]), Some(1));
    }

    #[test]
    fn k6_minus_two_edges_betti() {
        let g = k6_minus_two_edges();
        assert_eq!(enumerate_cliques(&g, 4).len(), 6);
        assert_eq!(betti(&g), vec![1, 6, 13, 13, 6, 1]);
    }

    #[test]
    fn complete_graph_betti_is_binomial_row() {
        for n in 0..=10usize {
            let b = betti(&Graph::complete(n));
            let mut row = vec![1usize];
            for k in 1..=n {
                row.push(row[k - 1] * (n + 1 - k) / k);
            }
            assert_eq!(b, row, "K_{n}");
        }
    }

    #[test]
    fn components() {
        let two = Graph::complete(4).disjoint_union(&Graph::complete(4));
        let comps = connected_components(&two);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.graph == Graph::complete(4)));
        assert_eq!(comps[1].vertices, vec![4, 5, 6, 7]);
        assert_eq!(connected_components(&Graph::empty(3)).len(), 3);
        assert_eq!(betti(&two)[0], 2);
    }

    #[test]
    fn cut_vertices() {
        let mut g = Graph::complete(4).disjoint_union(&Graph::complete(3));
        // glue: vertex 3 of the first K4 joined to a new K4 {3, 4, 5, 6}
        for u in 4..7 {
            g.add_edge(3, u);
        }
        assert_eq!(articulation_points(&g), BTreeSet::from([3]));
        assert!(articulation_points(&Graph::complete(4)).is_empty());
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(articulation_points(&path), BTreeSet::from([1]));
        assert_eq!(biconnected_blocks(&g), vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6]]);
    }

    #[test]
    fn edge_classes() {
        let mut g = Graph::complete(4).disjoint_union(&Graph::empty(1));
        g.add_edge(3, 4);
        let c = classify_edges(&g);
        assert_eq!((c.in_four_clique.len(), c.free), (6, vec![(3, 4)]));
        let c = classify_edges(&Graph::complete(3));
        assert_eq!((c.in_four_clique.len(), c.free.len()), (0, 3));
    }
}
