//! Cohomological invariants and h-bounds for right-angled Artin groups.
//!
//! A right-angled Artin group is given by a finite simple graph: one
//! generator per vertex, one commutator relation per edge. This crate reads
//! such graphs, counts cliques (which give the Betti numbers), builds the
//! mod-2 cup-product pairing on H², searches for its maximum rank `m₂`, and
//! assembles the bounds `b₂ ≤ 2b₂ − m₂ ≤ h ≤ 2b₂` together with exact values
//! for the graph families where they are known.

pub mod error;
pub mod family;
pub mod form;
pub mod gf2;
pub mod graph;
pub mod hbounds;
pub mod io;
pub mod isomorphism;
pub mod report;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use family::{generate_family, recognize_family, FamilyCertificate, GridShape};
pub use form::{build_cup_form, substitute, AlphaVector, CupFormTemplate};
pub use gf2::{max_isotropic, symplectic_reduce, BitVec, Gf2Matrix, SymplecticDecomposition};
pub use graph::{Clique, CliqueIndex, Graph};
pub use hbounds::{compute_h, decompose_h, h_family, h_free_abelian, HReport, Provenance};
pub use solver::{compute_m2, m2_heuristic, radical_at, M2Result, SolverConfig};
