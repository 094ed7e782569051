//! Maximum GF(2) rank of the cup-product form over all α ∈ H₄(G; Z₂).
//!
//! α is encoded as an integer with bit `p` the coefficient of clique `p`, and
//! the exhaustive search walks encodings upward, so the witness is always the
//! smallest encoding reaching the maximum. Alternating forms have even rank,
//! which caps the rank at `b₂` rounded down to even; reaching that ceiling
//! ends the search early.
//!
//! The form splits into independent blocks: two 4-cliques interact only if
//! they share an edge. Each block is searched on its own, which keeps both
//! the maximum and the smallest-encoding witness exact.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{build_cup_form, edge_sum, substitute, AlphaVector, CupFormTemplate};
use crate::gf2::{rank_in_place, BitVec};
use crate::graph::{maximal_cliques, Graph};

pub const DEFAULT_CAP: usize = 28;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest number of 4-cliques in one block searched exhaustively.
    pub cap: usize,
    pub workers: usize,
    /// Pseudorandom α tried by the heuristic after the structured seeds.
    pub random_samples: usize,
    pub seed: u64,
    /// Extra α tried first by the heuristic (whole-graph length).
    pub extra_seeds: Vec<AlphaVector>,
    /// Skip exhaustive search of blocks above the cap instead of failing.
    pub heuristic: bool,
    /// Report `CapExceeded` rather than falling back to the heuristic.
    pub strict: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            random_samples: 2048,
            seed: 0x5eed_2b2d,
            extra_seeds: Vec::new(),
            heuristic: false,
            strict: false,
        }
    }
}

impl SolverConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct M2Result {
    pub m2: usize,
    pub witness: AlphaVector,
    pub radical_dim: usize,
    /// True when `m2` is certified maximal, by enumeration or by reaching
    /// the parity ceiling. Otherwise `m2` is only a lower bound.
    pub exhaustive: bool,
    /// Certified upper bound on the true maximum: exact blocks contribute
    /// their rank, the others their parity ceiling.
    pub m2_upper: usize,
}

/// Rank ceiling for an alternating form on `dim` generators.
pub fn parity_ceiling(dim: usize) -> usize {
    dim - dim % 2
}

/// One independent block of the form.
struct Block {
    cliques: Vec<usize>,
    dim: usize,
    stride: usize,
    pairings: Vec<[(usize, usize); 3]>,
}

impl Block {
    fn ceiling(&self) -> usize {
        parity_ceiling(self.dim)
    }

    fn rank_with(&self, buf: &mut Vec<u64>, active: impl Iterator<Item = usize>) -> usize {
        buf.clear();
        buf.resize(self.dim * self.stride, 0);
        for p in active {
            for &(a, b) in &self.pairings[p] {
                buf[a * self.stride + b / 64] |= 1 << (b % 64);
                buf[b * self.stride + a / 64] |= 1 << (a % 64);
            }
        }
        rank_in_place(buf, self.dim, self.stride, self.dim)
    }

    fn rank_of_encoding(&self, buf: &mut Vec<u64>, enc: u64) -> usize {
        let bits = (0..self.cliques.len()).filter(|&p| (enc >> p) & 1 == 1);
        self.rank_with(buf, bits)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits the template into blocks of cliques linked by shared edges,
/// ordered by their smallest clique.
fn blocks(t: &CupFormTemplate) -> Vec<Block> {
    let b4 = t.clique_count();
    let mut parent: Vec<usize> = (0..b4).collect();
    let mut owner: Vec<Option<usize>> = vec![None; t.dim()];
    for (p, pairs) in t.pairings().iter().enumerate() {
        for &(a, b) in pairs {
            for e in [a, b] {
                match owner[e] {
                    None => owner[e] = Some(p),
                    Some(q) => {
                        let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
                        parent[rp.max(rq)] = rp.min(rq);
                    }
                }
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for p in 0..b4 {
        let r = find(&mut parent, p);
        by_root.entry(r).or_default().push(p);
    }
    by_root
        .into_values()
        .map(|cliques| {
            let mut edges: Vec<usize> = cliques
                .iter()
                .flat_map(|&p| t.pairings()[p].iter().flat_map(|&(a, b)| [a, b]))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            let local = |e: usize| edges.binary_search(&e).expect("block edge");
            let pairings = cliques
                .iter()
                .map(|&p| t.pairings()[p].map(|(a, b)| (local(a), local(b))))
                .collect();
            let dim = edges.len();
            Block { cliques, dim, stride: dim.div_ceil(64).max(1), pairings }
        })
        .collect()
}

/// Exhaustive search of one block: (max rank, smallest maximizing encoding).
fn search_block(block: &Block, workers: usize) -> (usize, u64) {
    let nb = block.cliques.len();
    let total: u64 = 1 << nb;
    let ceiling = block.ceiling();
    if workers <= 1 || total <= 1 << 10 {
        let mut buf = Vec::new();
        let mut best = (0, 0);
        for enc in 0..total {
            let r = block.rank_of_encoding(&mut buf, enc);
            if r > best.0 {
                best = (r, enc);
                if r == ceiling {
                    break;
                }
            }
        }
        return best;
    }
    let chunk: u64 = (total / (workers as u64 * 64)).clamp(1 << 8, 1 << 14);
    let next_chunk = AtomicU64::new(0);
    let first_hit = AtomicU64::new(u64::MAX);
    let results = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| {
                let mut buf = Vec::new();
                let mut local = (0usize, u64::MAX);
                loop {
                    let start = next_chunk.fetch_add(1, Ordering::Relaxed) * chunk;
                    if start >= total || start > first_hit.load(Ordering::Acquire) {
                        break;
                    }
                    let end = (start + chunk).min(total);
                    for enc in start..end {
                        if enc > first_hit.load(Ordering::Relaxed) {
                            break;
                        }
                        let r = block.rank_of_encoding(&mut buf, enc);
                        if r > local.0 || (r == local.0 && enc < local.1) {
                            local = (r, enc);
                        }
                        if r == ceiling {
                            first_hit.fetch_min(enc, Ordering::AcqRel);
                            break;
                        }
                    }
                }
                results.lock().expect("no poisoned workers").push(local);
            });
        }
    });
    let results = results.into_inner().expect("no poisoned workers");
    results
        .into_iter()
        .fold((0, u64::MAX), |best, cur| {
            if cur.0 > best.0 || (cur.0 == best.0 && cur.1 < best.1) {
                cur
            } else {
                best
            }
        })
}

fn assemble(t: &CupFormTemplate, parts: &[(Vec<usize>, usize, BitVec, bool)]) -> M2Result {
    let mut witness = BitVec::zeros(t.clique_count());
    let mut m2 = 0;
    let mut m2_upper = 0;
    let mut exhaustive = true;
    for (cliques, rank, local, certified) in parts {
        m2 += rank;
        m2_upper += if *certified { *rank } else { parity_ceiling(local_dim(t, cliques)) };
        exhaustive &= *certified;
        for i in local.iter_ones() {
            witness.set(cliques[i], true);
        }
    }
    M2Result {
        m2,
        witness: AlphaVector::from_bits(witness),
        radical_dim: t.dim() - m2,
        exhaustive,
        m2_upper,
    }
}

fn local_dim(t: &CupFormTemplate, cliques: &[usize]) -> usize {
    let mut edges: Vec<usize> = cliques
        .iter()
        .flat_map(|&p| t.pairings()[p].iter().flat_map(|&(a, b)| [a, b]))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges.len()
}

/// `m₂` as requested by the config: heuristic mode, or exact with a
/// heuristic fallback on `CapExceeded` unless strict.
pub fn solve(g: &Graph, cfg: &SolverConfig) -> Result<M2Result> {
    if cfg.heuristic {
        return Ok(m2_heuristic(g, cfg));
    }
    match compute_m2(g, cfg) {
        Err(Error::CapExceeded { .. }) if !cfg.strict => Ok(m2_heuristic(g, cfg)),
        other => other,
    }
}

/// Exact `m₂`. Fails with `CapExceeded` when some block has more than
/// `cfg.cap` cliques.
pub fn compute_m2(g: &Graph, cfg: &SolverConfig) -> Result<M2Result> {
    compute_m2_for(&build_cup_form(g), cfg)
}

pub fn compute_m2_for(t: &CupFormTemplate, cfg: &SolverConfig) -> Result<M2Result> {
    let blocks = blocks(t);
    if let Some(b) = blocks.iter().find(|b| b.cliques.len() > cfg.cap.min(63)) {
        return Err(Error::CapExceeded { b4: b.cliques.len(), cap: cfg.cap });
    }
    let parts: Vec<_> = blocks
        .iter()
        .map(|b| {
            let (rank, enc) = search_block(b, cfg.workers);
            (b.cliques.clone(), rank, BitVec::from_u64(b.cliques.len(), enc), true)
        })
        .collect();
    Ok(assemble(t, &parts))
}

/// Structured α seeds over the whole graph: all ones, then for every maximal
/// clique the first and last of its 4-subcliques (a 4-clique contributes
/// itself).
pub fn structured_seeds(g: &Graph, t: &CupFormTemplate) -> Vec<AlphaVector> {
    let b4 = t.clique_count();
    let mut pattern = BitVec::zeros(b4);
    for clique in maximal_cliques(g) {
        if clique.len() < 4 {
            continue;
        }
        let first = [clique[0], clique[1], clique[2], clique[3]];
        let s = clique.len();
        let last = [clique[s - 4], clique[s - 3], clique[s - 2], clique[s - 1]];
        for four in [first, last] {
            let p = t.clique_index().position(&four).expect("sub-clique of a clique");
            pattern.set(p, true);
        }
    }
    vec![AlphaVector::ones(b4), AlphaVector::from_bits(pattern)]
}

/// Best rank over seeds, for blocks too large to enumerate. Blocks within
/// the cap are still solved exactly. The result is certified only if every
/// block is exact or reaches its parity ceiling.
pub fn m2_heuristic(g: &Graph, cfg: &SolverConfig) -> M2Result {
    let t = build_cup_form(g);
    let mut seeds: Vec<AlphaVector> =
        cfg.extra_seeds.iter().filter(|s| s.len() == t.clique_count()).cloned().collect();
    seeds.extend(structured_seeds(g, &t));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let parts: Vec<_> = blocks(&t)
        .iter()
        .map(|b| {
            let nb = b.cliques.len();
            if nb <= cfg.cap.min(63) {
                let (rank, enc) = search_block(b, cfg.workers);
                return (b.cliques.clone(), rank, BitVec::from_u64(nb, enc), true);
            }
            let mut buf = Vec::new();
            let mut best: Option<(usize, BitVec)> = None;
            let mut consider = |local: BitVec, buf: &mut Vec<u64>| {
                let r = b.rank_with(buf, local.iter_ones());
                if best.as_ref().is_none_or(|(br, _)| r > *br) {
                    best = Some((r, local));
                }
                r == b.ceiling()
            };
            let restrict = |alpha: &AlphaVector| {
                let mut v = BitVec::zeros(nb);
                for (i, &p) in b.cliques.iter().enumerate() {
                    v.set(i, alpha.get(p));
                }
                v
            };
            let mut done = false;
            for s in &seeds {
                if consider(restrict(s), &mut buf) {
                    done = true;
                    break;
                }
            }
            if !done {
                for _ in 0..cfg.random_samples {
                    let mut v = BitVec::zeros(nb);
                    for i in 0..nb {
                        v.set(i, rng.gen::<bool>());
                    }
                    if consider(v, &mut buf) {
                        break;
                    }
                }
            }
            let (rank, local) = best.unwrap_or((0, BitVec::zeros(nb)));
            let certified = rank == b.ceiling();
            (b.cliques.clone(), rank, local, certified)
        })
        .collect();
    assemble(&t, &parts)
}

/// Radical of the form at a given α, with each basis vector rendered as a
/// sum of edge classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Radical {
    #[serde(skip)]
    pub basis: Vec<BitVec>,
    pub pretty: Vec<String>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn radical_at(g: &Graph, alpha: &AlphaVector) -> Result<Radical> {
    let t = build_cup_form(g);
    let m = substitute(&t, alpha)?;
    let basis = m.kernel_basis();
    let pretty = basis.iter().map(|v| edge_sum(&t, v)).collect();
    Ok(Radical { basis, pretty })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{generate_family, FamilyCertificate};

    fn shared_triangle() -> Graph {
        Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        )
    }

    #[test]
    fn shared_triangle_m2() {
        let r = compute_m2(&shared_triangle(), &SolverConfig::default().with_workers(1)).unwrap();
        assert_eq!((r.m2, r.radical_dim, r.exhaustive), (6, 3, true));
        // α = (1, 0) already reaches 6
        assert_eq!(r.witness.to_bit_string(), "10");
    }

    #[test]
    fn empty_alpha_space() {
        let g = Graph::complete(3);
        let r = compute_m2(&g, &SolverConfig::default()).unwrap();
        assert_eq!((r.m2, r.radical_dim, r.exhaustive, r.witness.len()), (0, 3, true, 0));
        let h = m2_heuristic(&g, &SolverConfig::default());
        assert_eq!((h.m2, h.exhaustive), (0, true));
    }

    #[test]
    fn cap_is_enforced_per_block() {
        let k5 = Graph::complete(5);
        let err = compute_m2(&k5, &SolverConfig::default().with_cap(4)).unwrap_err();
        assert_eq!(err, Error::CapExceeded { b4: 5, cap: 4 });
        // Two K5s: 10 cliques in total, 5 per block.
        let two = k5.disjoint_union(&k5);
        let r = compute_m2(&two, &SolverConfig::default().with_cap(5)).unwrap();
        assert_eq!(r.m2, 12);
    }

    #[test]
    fn radical_examples() {
        let g = shared_triangle();
        assert_eq!(radical_at(&g, &AlphaVector::parse("10").unwrap()).unwrap().dim(), 3);
        assert_eq!(radical_at(&g, &AlphaVector::zeros(2)).unwrap().dim(), 9);
        let s = generate_family(&FamilyCertificate::CliqueEdgeString { clique_size: 4, count: 2 })
            .unwrap();
        let rad = radical_at(&s, &AlphaVector::parse("01").unwrap()).unwrap();
        for z in ["z13", "z14", "z23", "z24"] {
            assert!(rad.pretty.iter().any(|p| p == z), "{z} in {:?}", rad.pretty);
        }
        let rad = radical_at(&s, &AlphaVector::parse("11").unwrap()).unwrap();
        assert_eq!(rad.pretty, vec!["z12 + z56".to_string()]);
    }

    #[test]
    fn heuristic_pattern_seed_on_five_clique_strings() {
        let g = generate_family(&FamilyCertificate::CliqueEdgeString { clique_size: 5, count: 4 })
            .unwrap();
        let cfg = SolverConfig { cap: 8, random_samples: 0, ..SolverConfig::default() };
        let r = m2_heuristic(&g, &cfg);
        assert!(r.m2 >= 24, "found {}", r.m2);
        assert_eq!(r.m2 % 2, 0);
    }
}
