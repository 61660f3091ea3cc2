//! The rank-one free boson vertex algebra on `ℚ[x₁, x₂, …]`, `wt x_n = n`.
//!
//! `a = x₁` acts by `a_(k) = k ∂/∂x_k` for `k ≥ 1`, `a_(0) = 0` and
//! `a_(−k) = x_k ·`; fields of composite states come from normal ordering.

mod checks;
mod conformal;
mod modes;
mod state;
mod subspace;
mod theorem;

pub use checks::{
    borcherds_sweep, skew_sweep, vacuum_dichotomy, verify_axioms, verify_borcherds, verify_skew_vertex,
    verify_wick, wick_sweep, AxiomsReport, IdentityCheck, LocalityOrder, Outcome, SweepReport,
};
pub use conformal::{compare_with_algebra, extract_conformal, image_of, BracketEntry, ExtractReport, FockConformal};
pub use modes::{Cutoff, FockVertex};
pub use state::{basis_of_weight, basis_up_to, translation, FockState, Monomial};
pub use subspace::{subspace_product, translation_closure, GradedSubspace};
pub use theorem::{theorem_ideal_check, TheoremReport, Violation, TRUNCATION_CAVEAT};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FockError {
    #[error("state weight {weight} exceeds the source limit {limit}")]
    WeightExceeded { weight: usize, limit: usize },
    #[error("refused: {what} (needs cutoff {required_cutoff})")]
    Refused { what: String, required_cutoff: usize },
    #[error("state `{0}` is not homogeneous")]
    Inhomogeneous(String),
    #[error("{0}")]
    Mapping(String),
}
