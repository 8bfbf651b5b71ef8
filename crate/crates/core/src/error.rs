use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::check::CheckFailure;
use crate::linalg::LinalgError;
use crate::presentation::ParseError;
use crate::quiver::QuiverError;
use crate::scalar::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("resolution level {n} is not available (computed up to {bound})")]
    LevelOutOfRange { n: usize, bound: usize },
    #[error("comultiplication slice (n, r) = ({n}, {r}) is not available")]
    MissingSlice { n: usize, r: usize },
    #[error("basis for level {n} rejected: {reason}")]
    SpanMismatch { n: usize, reason: String },
    #[error("f^{n}_{i} is not a combination of products at split r = {r}; the input is not Koszul")]
    KoszulAssumptionViolated { n: usize, i: usize, r: usize },
    #[error("resolution is not exact at homological degree {n}, internal degree {d} (homology dimension {homology})")]
    ExactnessFailure { n: usize, d: usize, homology: usize },
    #[error("cochain of degree {n} is not a cocycle in weight {weight}")]
    NotCocycle { n: usize, weight: usize },
    #[error("Λ is not known to be finite-dimensional; give an explicit weight for degree {n}")]
    InfiniteDimensionalWeightRange { n: usize },
    #[error("invalid cochain: {0}")]
    InvalidCochain(String),
    #[error("check failed: {0}")]
    Check(#[from] CheckFailure),
}

impl Error {
    /// Failures that mean the input does not behave like a Koszul algebra.
    pub fn is_koszul_failure(&self) -> bool {
        matches!(
            self,
            Error::KoszulAssumptionViolated { .. } | Error::ExactnessFailure { .. } | Error::Check(_)
        )
    }
}
