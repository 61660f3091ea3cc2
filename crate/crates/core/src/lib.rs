//! Exact symbolic computation for Lie conformal (super)algebras and a
//! weight-truncated free-boson vertex algebra.
//!
//! * [`conformal`] holds algebras given by λ-bracket structure constants, the
//!   axiom checks and the structural analyses (derived series, centre,
//!   ideal closure, classification).
//! * [`lattice`] gives canonical forms for ℂ[∂]-submodules.
//! * [`fock`] realizes the rank-one free boson on polynomial Fock space and
//!   verifies vertex-algebra identities exactly, up to a weight cutoff.
//! * [`wick`] recovers `p(λ)` from the high λ-coefficients of
//!   `e^{λz} p(λ) + q(λ)` using the factorial matrix.
//! * [`dsl`] parses `.lca` presentations and ships builtin examples.
//! * [`cli`] is the command-line front end used by the `lcalc` binary.

pub mod arith;
pub mod calculus;
pub mod cli;
pub mod conformal;
pub mod dsl;
pub mod fock;
pub mod lattice;
pub mod linalg;
pub mod wick;
