//! Small-graph isomorphism by colour refinement with individualisation.
//!
//! Both graphs are refined together so that colour ids mean the same thing on
//! each side. When refinement stalls on a non-discrete colouring, a vertex of
//! the first non-singleton class of `a` is pinned against each candidate of
//! the same class in `b`, and the search recurses. Intended for the catalog
//! graphs (n ≤ 30), where the first branch almost always succeeds.

use std::collections::BTreeMap;

use crate::graph::Graph;

type Colouring = Vec<usize>;

fn refine(a: &Graph, b: &Graph, ca: &mut Colouring, cb: &mut Colouring) {
    let mut classes = distinct(ca, cb);
    loop {
        let sig = |g: &Graph, c: &Colouring, v: usize| {
            let mut nb: Vec<usize> = g.neighbors(v).iter_ones().map(|w| c[w]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let sa: Vec<_> = (0..ca.len()).map(|v| sig(a, ca, v)).collect();
        let sb: Vec<_> = (0..cb.len()).map(|v| sig(b, cb, v)).collect();
        let mut names = BTreeMap::new();
        for s in sa.iter().chain(&sb) {
            let next = names.len();
            names.entry(s.clone()).or_insert(next);
        }
        // Renumber in signature order so ids do not depend on vertex order.
        for (i, id) in names.values_mut().enumerate() {
            *id = i;
        }
        *ca = sa.iter().map(|s| names[s]).collect();
        *cb = sb.iter().map(|s| names[s]).collect();
        let now = names.len();
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn distinct(ca: &Colouring, cb: &Colouring) -> usize {
    let mut all: Vec<usize> = ca.iter().chain(cb).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(c: &Colouring) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

fn search(a: &Graph, b: &Graph, ca: Colouring, cb: Colouring) -> bool {
    let mut ca = ca;
    let mut cb = cb;
    refine(a, b, &mut ca, &mut cb);
    let ha = histogram(&ca);
    if ha != histogram(&cb) {
        return false;
    }
    let Some((&cell, _)) = ha.iter().find(|(_, &size)| size > 1) else {
        let mut map = vec![0; ca.len()];
        for (v, &c) in ca.iter().enumerate() {
            map[v] = cb.iter().position(|&d| d == c).expect("matching histograms");
        }
        return a.edges().iter().all(|&(u, v)| b.has_edge(map[u], map[v]));
    };
    let pinned = ha.keys().last().map_or(0, |m| m + 1);
    let v = ca.iter().position(|&c| c == cell).expect("cell is non-empty");
    for u in (0..cb.len()).filter(|&u| cb[u] == cell) {
        let mut na = ca.clone();
        let mut nb = cb.clone();
        na[v] = pinned;
        nb[u] = pinned;
        if search(a, b, na, nb) {
            return true;
        }
    }
    false
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.vertex_count()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.vertex_count()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let n = a.vertex_count();
    search(a, b, vec![0; n], vec![0; n])
}
