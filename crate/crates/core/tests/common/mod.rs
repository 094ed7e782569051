//! Reference implementations used to cross-check the library.
//!
//! Everything here works from the adjacency relation alone with plain
//! nested loops and byte matrices, sharing no code with the crate beyond
//! `Graph::has_edge`.

#![allow(dead_code)]

use raagh_core::Graph;

pub fn edges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn four_cliques(g: &Graph) -> Vec<[usize; 4]> {
    let n = g.vertex_count();
    let a = |x, y| g.has_edge(x, y);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !a(i, j) {
                continue;
            }
            for k in j + 1..n {
                if !(a(i, k) && a(j, k)) {
                    continue;
                }
                for l in k + 1..n {
                    if a(i, l) && a(j, l) && a(k, l) {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    out
}

pub fn clique_count(g: &Graph, k: usize) -> usize {
    fn go(g: &Graph, chosen: &mut Vec<usize>, from: usize, k: usize) -> usize {
        if chosen.len() == k {
            return 1;
        }
        let mut total = 0;
        for v in from..g.vertex_count() {
            if chosen.iter().all(|&u| g.has_edge(u, v)) {
                chosen.push(v);
                total += go(g, chosen, v + 1, k);
                chosen.pop();
            }
        }
        total
    }
    go(g, &mut Vec::new(), 0, k)
}

/// Signed template: entry `±(p + 1)` for clique `p`, 0 elsewhere.
pub fn signed_template(g: &Graph) -> Vec<Vec<i64>> {
    let e = edges(g);
    let row = |u: usize, v: usize| e.iter().position(|&x| x == (u, v)).unwrap();
    let mut d = vec![vec![0i64; e.len()]; e.len()];
    for (p, [i, j, k, l]) in four_cliques(g).into_iter().enumerate() {
        let p = p as i64 + 1;
        for (a, b, s) in [((i, j), (k, l), p), ((i, k), (j, l), -p), ((i, l), (j, k), p)] {
            d[row(a.0, a.1)][row(b.0, b.1)] = s;
            d[row(b.0, b.1)][row(a.0, a.1)] = s;
        }
    }
    d
}

/// Template evaluated mod 2 at the α with integer encoding `enc`.
pub fn substituted(template: &[Vec<i64>], enc: u64) -> Vec<Vec<u8>> {
    template
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| if x == 0 { 0 } else { ((enc >> (x.unsigned_abs() - 1)) & 1) as u8 })
                .collect()
        })
        .collect()
}

pub fn rank_mod2(mut m: Vec<Vec<u8>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] == 1) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c] == 1 {
                for x in 0..cols {
                    m[r][x] ^= m[rank][x];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Maximum rank over every α, scanned in increasing encoding with no early
/// exit; returns the rank and the first encoding reaching it.
pub fn naive_m2(g: &Graph) -> (usize, u64) {
    let t = signed_template(g);
    let b4 = four_cliques(g).len();
    let mut best = (0, 0);
    for enc in 0..1u64 << b4 {
        let r = rank_mod2(substituted(&t, enc));
        if r > best.0 {
            best = (r, enc);
        }
    }
    best
}

/// `M v` over GF(2).
pub fn mul(m: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
    m.iter().map(|r| r.iter().zip(v).fold(0, |acc, (a, b)| acc ^ (a & b))).collect()
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Graph {
    let mut g = Graph::empty(n);
    for &(u, v) in pairs {
        g.add_edge(u, v);
    }
    g
}

pub fn clique_on(g: &mut Graph, vs: &[usize]) {
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            g.add_edge(u, v);
        }
    }
}

/// Two 4-cliques {0,1,2,3} and {1,2,3,4} glued along a triangle.
pub fn shared_triangle() -> Graph {
    let mut g = Graph::empty(5);
    clique_on(&mut g, &[0, 1, 2, 3]);
    clique_on(&mut g, &[1, 2, 3, 4]);
    g
}

/// Chain of `count` cliques of size `size`, consecutive ones sharing an edge.
pub fn clique_chain(size: usize, count: usize) -> Graph {
    let step = size - 2;
    let mut g = Graph::empty(step * count + 2);
    for c in 0..count {
        let vs: Vec<usize> = (c * step..c * step + size).collect();
        clique_on(&mut g, &vs);
    }
    g
}

/// Path power: `i ~ j` iff `0 < |i − j| ≤ 3`, on `count + 3` vertices.
pub fn face_chain(count: usize) -> Graph {
    let n = count + 3;
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..(i + 4).min(n) {
            g.add_edge(i, j);
        }
    }
    g
}
