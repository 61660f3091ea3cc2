//! Lie conformal superalgebras given by structure constants.

mod algebra;
mod checks;
mod element;
mod structure;

pub use algebra::ConformalAlgebra;
pub use checks::{check_jacobi, check_sesquilinearity, check_skew, AxiomEntry, AxiomReport};
pub use element::{
    ConformalElement, GenKind, GeneratorDecl, Generators, LambdaMuPoly, LambdaPoly, Parity,
};
pub use structure::{
    centre, classify, derived_series, ideal_closure, is_central_ideal, is_ideal,
    ideal_closure_rounds, lambda_coefficient_span, Centre, Classification, DerivedSeries,
    SeriesStatus, TestedIdeal, Verdict, MAX_CLOSURE_ROUNDS,
};

use thiserror::Error;

use crate::lattice::LatticeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("generator `{0}` is not declared")]
    UndeclaredGenerator(String),
    #[error("generator `{0}` is declared twice")]
    DuplicateGenerator(String),
    #[error("parameter `{0}` is not declared")]
    UndeclaredParameter(String),
    #[error("term on `{term}` in [{left}, {right}] has the wrong parity")]
    ParityMismatch {
        left: String,
        right: String,
        term: String,
    },
    #[error("central generator `{0}` must have zero brackets")]
    TorsionBracket(String),
    #[error("[{left}, {right}] and [{right}, {left}] are not related by skew-symmetry")]
    SkewMismatch { left: String, right: String },
    #[error("algebra `{0}` has formal parameters; structural analysis needs them specialized")]
    Parametric(String),
    #[error("{0}")]
    Lattice(#[from] LatticeError),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
}
