//! The symbolic cup-product pairing on H² and its mod-2 substitutions.
//!
//! H² has one generator per edge and H⁴ one per 4-clique. Two edge classes
//! pair to the class of a 4-clique exactly when the edges are disjoint and
//! their four endpoints span that clique. For a clique `i < j < k < l` the
//! three complementary pairs carry the signs
//! `(ij, kl) → +`, `(ik, jl) → −`, `(il, jk) → +`.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::graph::{enumerate_cliques, CliqueIndex, Edge, Graph};

/// A template entry: 0-based clique id and the sign of the pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormEntry {
    pub clique: usize,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct CupFormTemplate {
    edges: CliqueIndex,
    cliques: CliqueIndex,
    entries: Vec<Option<FormEntry>>,
    /// For each clique, its three complementary edge pairs as edge indices.
    pairings: Vec<[(usize, usize); 3]>,
}

impl CupFormTemplate {
    /// `b₂`, the size of the form.
    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    /// `b₄`, the number of variables.
    pub fn clique_count(&self) -> usize {
        self.cliques.len()
    }

    pub fn edge_index(&self) -> &CliqueIndex {
        &self.edges
    }

    pub fn clique_index(&self) -> &CliqueIndex {
        &self.cliques
    }

    pub fn edge(&self, i: usize) -> Edge {
        let v = self.edges.get(i).vertices();
        (v[0], v[1])
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<FormEntry> {
        self.entries[r * self.dim() + c]
    }

    pub fn pairings(&self) -> &[[(usize, usize); 3]] {
        &self.pairings
    }

    /// Text matrix with `0`, `+p`, `-p` entries (1-based clique ids),
    /// right-aligned in columns.
    pub fn to_text(&self) -> String {
        let d = self.dim();
        let cells: Vec<String> = (0..d * d)
            .map(|i| match self.entries[i] {
                None => "0".to_string(),
                Some(FormEntry { clique, sign }) => {
                    format!("{}{}", if sign > 0 { '+' } else { '-' }, clique + 1)
                }
            })
            .collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for r in 0..d {
            let row: Vec<String> =
                (0..d).map(|c| format!("{:>width$}", cells[r * d + c])).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

pub fn build_cup_form(g: &Graph) -> CupFormTemplate {
    let edges = enumerate_cliques(g, 2);
    let cliques = enumerate_cliques(g, 4);
    let d = edges.len();
    let mut entries = vec![None; d * d];
    let mut pairings = Vec::with_capacity(cliques.len());
    let edge_id = |a: usize, b: usize| edges.position(&[a, b]).expect("clique edge present");
    for (p, clique) in cliques.cliques().iter().enumerate() {
        let &[i, j, k, l] = clique.vertices() else { unreachable!("4-clique") };
        let pairs = [
            (edge_id(i, j), edge_id(k, l), 1),
            (edge_id(i, k), edge_id(j, l), -1),
            (edge_id(i, l), edge_id(j, k), 1),
        ];
        for &(a, b, sign) in &pairs {
            let e = Some(FormEntry { clique: p, sign });
            entries[a * d + b] = e;
            entries[b * d + a] = e;
        }
        pairings.push(pairs.map(|(a, b, _)| (a, b)));
    }
    CupFormTemplate { edges, cliques, entries, pairings }
}

/// A class α ∈ H₄(G; Z₂): one coefficient per 4-clique.
///
/// Its integer encoding puts the coefficient of clique `p` at bit `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaVector(BitVec);

impl AlphaVector {
    pub fn zeros(len: usize) -> Self {
        Self(BitVec::zeros(len))
    }

    pub fn ones(len: usize) -> Self {
        Self(BitVec::ones(len))
    }

    pub fn from_encoding(len: usize, value: u64) -> Self {
        Self(BitVec::from_u64(len, value))
    }

    /// Little-endian bit string: character `p` is the coefficient of clique `p`.
    pub fn parse(bits: &str) -> Result<Self> {
        BitVec::parse_bits(bits).map(Self)
    }

    pub fn from_bits(bits: BitVec) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, p: usize) -> bool {
        self.0.get(p)
    }

    pub fn encoding(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_bit_string(&self) -> String {
        self.0.to_bit_string()
    }
}

impl Serialize for AlphaVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bit_string())
    }
}

impl<'de> Deserialize<'de> for AlphaVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Evaluates the template at α: entry `(r, c)` becomes the coefficient of
/// its clique. Signs vanish mod 2.
pub fn substitute(t: &CupFormTemplate, alpha: &AlphaVector) -> Result<Gf2Matrix> {
    if alpha.len() != t.clique_count() {
        return Err(Error::LengthMismatch { expected: t.clique_count(), found: alpha.len() });
    }
    let mut m = Gf2Matrix::zeros(t.dim(), t.dim());
    for p in alpha.bits().iter_ones() {
        for &(a, b) in &t.pairings[p] {
            m.set(a, b, true);
            m.set(b, a, true);
        }
    }
    Ok(m)
}

/// Renders a vector of H² as a sum of edge classes, e.g. `z12 + z56`.
/// Vertices print 1-based; indices past 9 are comma-separated (`z3,12`).
pub fn edge_sum(t: &CupFormTemplate, v: &BitVec) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = v
        .iter_ones()
        .map(|i| {
            let (a, b) = t.edge(i);
            if b < 9 {
                format!("z{}{}", a + 1, b + 1)
            } else {
                format!("z{},{}", a + 1, b + 1)
            }
        })
        .collect();
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_template_is_empty() {
        let t = build_cup_form(&Graph::complete(3));
        assert_eq!((t.dim(), t.clique_count()), (3, 0));
        assert!((0..3).all(|r| (0..3).all(|c| t.entry(r, c).is_none())));
        assert_eq!(t.to_text(), "0 0 0\n0 0 0\n0 0 0\n");
    }

    #[test]
    fn k4_pairs_complementary_edges() {
        let t = build_cup_form(&Graph::complete(4));
        // edges: 01 02 03 12 13 23
        let expected = [(0, 5, 1), (1, 4, -1), (2, 3, 1)];
        for r in 0..6 {
            for c in 0..6 {
                let want = expected
                    .iter()
                    .find(|&&(a, b, _)| (a, b) == (r, c) || (b, a) == (r, c))
                    .map(|&(_, _, sign)| FormEntry { clique: 0, sign });
                assert_eq!(t.entry(r, c), want, "({r},{c})");
            }
        }
        let m = substitute(&t, &AlphaVector::ones(1)).unwrap();
        assert_eq!(m.rank(), 6);
    }

    #[test]
    fn alpha_length_checked() {
        let t = build_cup_form(&Graph::complete(4));
        assert!(matches!(
            substitute(&t, &AlphaVector::zeros(2)),
            Err(Error::LengthMismatch { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn zero_alpha_gives_zero_matrix() {
        let t = build_cup_form(&Graph::complete(6));
        assert!(substitute(&t, &AlphaVector::zeros(15)).unwrap().is_zero());
    }
}
