//! sl2 weight modules, the Casimir element, spectral projections and weight functionals.

mod decompose;
mod intertwiner;
mod module;
mod projection;

pub use decompose::{pieri_multiplicity, tensor_casimir_block, tensor_decomposition, tensor_weight_space};
pub use intertwiner::{Intertwiner, Symmetry};
pub use module::{Generator, InfinitesimalCharacter, ModuleKind, WeightModule, UNBOUNDED};
pub use projection::{primary_projection, spectral_projector, weight_functional};

use crate::exact::{ExactScalar, MatrixError};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Sl2Error {
    #[error("highest weight must be nonnegative, got {0}")]
    NegativeHighestWeight(i64),
    #[error("truncation length {0} is below the minimum of 4")]
    TruncationTooShort(usize),
    #[error("spectrum value {0} is repeated")]
    RepeatedSpectrum(ExactScalar),
    #[error("target {0} is not in the spectrum")]
    TargetAbsent(ExactScalar),
    #[error("spectrum does not exhaust the Casimir eigenvalues")]
    IncompleteSpectrum,
    #[error("weight {nu} has multiplicity {multiplicity}; the weight functional is ambiguous")]
    AmbiguousWeight { nu: ExactScalar, multiplicity: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
