//! Numerical verification of spectral gaps for ε-almost representations of
//! groups whose symmetric generating set has a link graph with `λ₁ > 1/2`.
//!
//! The pipeline:
//! - [`genset`] builds and validates generating sets `S` with their partial
//!   product tables.
//! - [`linkgraph`] builds the link graph `L(S)`, computes `λ₁`, and checks
//!   the Żuk condition `λ₁ > 1/2`.
//! - [`almostrep`] measures the defect `ε`, certifies the spectral gap of the
//!   averaged operator and splits off the almost-invariant part.
//! - [`cochain`] assembles `C⁰ → C¹ → C²` and checks the identities and
//!   inequalities behind the gap estimate.
//! - [`synth`] produces genuine, perturbed and random inputs.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar type.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod almostrep;
pub mod cochain;
pub mod error;
pub mod genset;
pub mod io;
pub mod linalg;
pub mod linkgraph;
pub mod scalar;
pub mod synth;

pub use almostrep::{
    averaged_operator, certify_gap, certify_gap_with_epsilon, compute_alpha, decompose_trivial_part,
    measure_defect, nearest_unitary, AlmostRep, Decomposition, DecompositionBounds, DefectReport, GapCertificate,
    Verdict,
};
pub use cochain::{
    assemble_cochain_system, spectral_subspaces, vector_dichotomy, verify_b1_bound, verify_defect_inequalities,
    verify_exact_identities, BSubspaces, CochainSystem, DichotomyKind, DichotomyOutcome, LemmaCheck, LemmaReport,
};
pub use error::{Error, Result};
pub use genset::{
    genset_from_permutations, genset_from_table, validate_generating_set, GeneratingSet, GensetMode, GroupTable,
    Permutation, PermutationSet,
};
pub use linkgraph::{build_link_graph, laplacian_spectrum, zuk_certificate, LinkGraph, SpectralCertificate};
pub use scalar::Real;

pub type AlmostRep64 = AlmostRep<f64>;
pub type AlmostRep32 = AlmostRep<f32>;
pub type CochainSystem64 = CochainSystem<f64>;
pub type CochainSystem32 = CochainSystem<f32>;
pub type Decomposition64 = Decomposition<f64>;
pub type Decomposition32 = Decomposition<f32>;
pub type CMat64 = linalg::CMat<f64>;
pub type CMat32 = linalg::CMat<f32>;
