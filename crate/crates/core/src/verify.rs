//! Reference corpus behind `raagh verify-paper`.
//!
//! Each check recomputes published numbers from scratch and compares them
//! with the expected values, within a wall-clock budget.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{generate_family, FamilyCertificate as F};
use crate::form::{build_cup_form, substitute, AlphaVector};
use crate::gf2::max_isotropic;
use crate::graph::{betti, Graph};
use crate::hbounds::{compute_h, decompose_h, h_family, h_free_abelian, Provenance};
use crate::io::{parse_graph, Format};
use crate::solver::{compute_m2, m2_heuristic, parity_ceiling, radical_at, SolverConfig};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

pub const SHARED_TRIANGLE_CSV: &str = "0,1,1,1,0\n1,0,1,1,1\n1,1,0,1,1\n1,1,1,0,1\n0,1,1,1,0\n";

pub fn shared_triangle() -> Graph {
    parse_graph(SHARED_TRIANGLE_CSV, Format::AdjacencyCsv).expect("well-formed matrix")
}

/// K₈ minus the perfect matching {0,1}, {2,3}, {4,5}, {6,7}.
pub fn boxes_graph() -> Graph {
    let mut g = Graph::complete(8);
    for i in (0..8).step_by(2) {
        g.remove_edge(i, i + 1);
    }
    g
}

/// Two K₄s, a 5-clique sharing an edge with a 4-clique, and 16 free edges.
/// Pieces: K₅ on 0..5 with K₄ on {3,4,5,6}; K₄ on {6,7,8,9} wedged at 6;
/// K₄ on 10..14.
pub fn decomposition_graph() -> Graph {
    let mut g = Graph::empty(14);
    let cliques: [&[usize]; 4] = [&[0, 1, 2, 3, 4], &[3, 4, 5, 6], &[6, 7, 8, 9], &[10, 11, 12, 13]];
    for c in cliques {
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    for (u, v) in [
        (0, 10), (0, 11), (1, 10), (1, 12), (2, 11), (2, 12), (3, 13), (4, 13),
        (5, 10), (5, 11), (6, 10), (6, 12), (7, 10), (7, 11), (8, 11), (8, 12),
    ] {
        g.add_edge(u, v);
    }
    g
}

/// Rank maximization in plain enumeration order with no early exit.
pub fn naive_m2(g: &Graph) -> (usize, u64) {
    let t = build_cup_form(g);
    let b4 = t.clique_count();
    let mut best = (0, 0);
    for enc in 0..1u64 << b4 {
        let rank = substitute(&t, &AlphaVector::from_encoding(b4, enc)).expect("length").rank();
        if rank > best.0 {
            best = (rank, enc);
        }
    }
    best
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, max_b4: usize) -> Graph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let p: f64 = rng.gen_range(0.2..0.8);
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        if betti(&g).get(4).copied().unwrap_or(0) <= max_b4 {
            return g;
        }
    }
}

fn check(
    id: usize,
    name: &'static str,
    budget: Duration,
    f: impl FnOnce() -> Result<String, String>,
) -> CheckResult {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > budget {
        passed = false;
        detail = format!("{detail}; took {elapsed:?}, budget {budget:?}");
    }
    CheckResult { id, name, passed, detail, elapsed }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn cfg(workers: usize) -> SolverConfig {
    SolverConfig::default().with_workers(workers)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn run_all(workers: usize, random_graphs: usize) -> Vec<CheckResult> {
    let s = Duration::from_secs;
    let c = cfg(workers);
    vec![
        check(1, "two K4 sharing a triangle", s(1), || {
            let g = shared_triangle();
            let r = compute_m2(&g, &c).map_err(err)?;
            expect("m2", r.m2, 6)?;
            expect("bound", 2 * g.edge_count() - r.m2, 12)?;
            let rad = radical_at(&g, &AlphaVector::parse("11").map_err(err)?).map_err(err)?;
            expect("radical dim", rad.dim(), 3)?;
            Ok("m2=6 bound=12 radical=3".into())
        }),
        check(2, "cup-form template entries", s(1), || {
            let t = build_cup_form(&shared_triangle());
            // (row, col, clique, sign) over 1-based edges 12 13 14 23 24 25 34 35 45
            let want = [
                (0, 6, 0, 1), (1, 4, 0, -1), (2, 3, 0, 1),
                (3, 8, 1, 1), (4, 7, 1, -1), (5, 6, 1, 1),
            ];
            let mut count = 0;
            for r in 0..9 {
                for col in 0..9 {
                    let e = t.entry(r, col).map(|e| (e.clique, e.sign));
                    let w = want
                        .iter()
                        .find(|&&(a, b, _, _)| (a, b) == (r, col) || (b, a) == (r, col))
                        .map(|&(_, _, p, sgn)| (p, sgn));
                    expect(&format!("entry ({r},{col})"), e, w)?;
                    count += usize::from(e.is_some());
                }
            }
            Ok(format!("{count} nonzero entries match"))
        }),
        check(3, "two K4 sharing an edge", s(1), || {
            let g = generate_family(&F::CliqueEdgeString { clique_size: 4, count: 2 }).map_err(err)?;
            let r = compute_m2(&g, &c).map_err(err)?;
            expect("b2", g.edge_count(), 11)?;
            expect("m2", r.m2, 10)?;
            expect("bound", 2 * 11 - r.m2, 12)?;
            let rad = radical_at(&g, &AlphaVector::parse("11").map_err(err)?).map_err(err)?;
            expect("radical", rad.pretty, vec!["z12 + z56".to_string()])?;
            Ok("b2=11 m2=10 bound=12".into())
        }),
        check(4, "4-clique strings: radical parity", s(5), || {
            for l in 2..=6 {
                let g = generate_family(&F::CliqueEdgeString { clique_size: 4, count: l }).map_err(err)?;
                let r = compute_m2(&g, &c).map_err(err)?;
                let parity = usize::from(l % 2 == 0);
                expect(&format!("radical l={l}"), r.radical_dim, parity)?;
                expect(&format!("m2 l={l}"), r.m2, 5 * l + 1 - parity)?;
            }
            Ok("l=2..6".into())
        }),
        check(5, "5-clique strings k=1..3", s(30), || {
            for (k, b2, m2, bound) in [(1, 10, 6, 14), (2, 19, 12, 26), (3, 28, 18, 38)] {
                let cert = F::CliqueEdgeString { clique_size: 5, count: k };
                let g = generate_family(&cert).map_err(err)?;
                let r = compute_m2(&g, &c).map_err(err)?;
                expect(&format!("k={k}"), (g.edge_count(), r.m2, 2 * b2 - r.m2), (b2, m2, bound))?;
                expect("h_family", h_family(&cert, &c).map_err(err)?.0, 12 * k + 2)?;
            }
            Ok("(10,6,14) (19,12,26) (28,18,38)".into())
        }),
        check(6, "face strings k=2..6", s(5), || {
            for k in 2..=6 {
                let cert = F::FaceString { count: k };
                let g = generate_family(&cert).map_err(err)?;
                let r = compute_m2(&g, &c).map_err(err)?;
                let want = if k % 2 == 0 { 3 * k + 6 } else { 3 * k + 5 };
                expect(&format!("bound k={k}"), 2 * g.edge_count() - r.m2, want)?;
                expect("h_family", h_family(&cert, &c).map_err(err)?.0, want)?;
            }
            Ok("3k+6 / 3k+5".into())
        }),
        check(7, "K6", s(30), || {
            let g = Graph::complete(6);
            let r = compute_m2(&g, &c).map_err(err)?;
            expect("(b2, m2)", (g.edge_count(), r.m2), (15, 14))?;
            expect("free abelian", h_free_abelian(6), 16)?;
            let s6 = h_family(&F::CliqueEdgeString { clique_size: 6, count: 1 }, &c).map_err(err)?;
            expect("6-clique string", s6, (16, Provenance::CliqueString6))?;
            Ok("b2=15 m2=14 h=16".into())
        }),
        check(8, "boxes graph", s(60), || {
            let g = boxes_graph();
            let b = betti(&g);
            expect("b4", b[4], 16)?;
            let r = compute_m2(&g, &c).map_err(err)?;
            expect("(b2, m2, bound)", (g.edge_count(), r.m2, 2 * 24 - r.m2), (24, 22, 26))?;
            Ok("b2=24 m2=22 bound=26".into())
        }),
        check(9, "decomposition aggregate", s(10), || {
            let d = decompose_h(&decomposition_graph(), &c).map_err(err)?;
            let mut values: Vec<usize> =
                d.pieces.iter().filter_map(|p| p.report.exact.map(|e| e.value)).collect();
            values.sort_unstable();
            expect("free edges", d.removed_free_edges, 16)?;
            expect("piece values", values, vec![6, 6, 18])?;
            expect("aggregate", d.aggregate_exact, Some(62))?;
            Ok("6+6+18+32=62".into())
        }),
        check(10, "free abelian table", s(1), || {
            for n in 0..=10usize {
                let c2 = n * n.saturating_sub(1) / 2;
                let want = match n {
                    3 => 6,
                    5 => 14,
                    _ => c2 + c2 % 2,
                };
                expect(&format!("n={n}"), h_free_abelian(n), want)?;
            }
            Ok("n=0..10".into())
        }),
        check(11, "random graph properties", s(120), || {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for i in 0..random_graphs {
                let g = random_graph(&mut rng, 12, 12);
                let runs: Vec<_> = [1, 2, 8]
                    .iter()
                    .map(|&w| compute_m2(&g, &cfg(w)).map_err(err))
                    .collect::<Result<_, _>>()?;
                let r = &runs[0];
                if runs.iter().any(|x| x != r) {
                    return Err(format!("graph {i}: worker counts disagree"));
                }
                if r.m2 % 2 != 0 {
                    return Err(format!("graph {i}: odd m2 {}", r.m2));
                }
                let t = build_cup_form(&g);
                let m = substitute(&t, &r.witness).map_err(err)?;
                expect("rank + nullity", m.rank() + m.kernel_basis().len(), t.dim())?;
                let iso = max_isotropic(&m).map_err(err)?;
                expect("isotropic", iso.len(), t.dim() - r.m2 / 2)?;
                if t.clique_count() <= 10 {
                    let (m2, enc) = naive_m2(&g);
                    expect("oracle", (r.m2, r.witness.encoding()), (m2, Some(enc)))?;
                }
            }
            Ok(format!("{random_graphs} graphs"))
        }),
        check(12, "large clique strings via heuristic", s(60), || {
            let g = generate_family(&F::CliqueEdgeString { clique_size: 6, count: 2 }).map_err(err)?;
            let r = m2_heuristic(&g, &c);
            expect("ceiling", parity_ceiling(g.edge_count()), 28)?;
            if r.m2 < 2 * 29 - (14 * 2 + 2) || !r.exhaustive {
                return Err(format!("heuristic m2 {} exhaustive {}", r.m2, r.exhaustive));
            }
            for k in 1..=4 {
                let h6 = h_family(&F::CliqueEdgeString { clique_size: 6, count: k }, &c).map_err(err)?;
                let h7 = h_family(&F::CliqueEdgeString { clique_size: 7, count: k }, &c).map_err(err)?;
                expect("14k+2", h6.0, 14 * k + 2)?;
                expect("20k+2", h7.0, 20 * k + 2)?;
            }
            let report = compute_h(&g, &c).map_err(err)?;
            expect("report exact", report.exact.map(|e| e.value), Some(30))?;
            Ok(format!("m2={} certified", r.m2))
        }),
    ]
}
