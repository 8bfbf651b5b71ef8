//! Computations for Koszul quotients `Λ = kQ/I` of path algebras by
//! quadratic ideals.
//!
//! Starting from a [`Presentation`], a [`Session`] computes the uniform
//! bases `f^n_i` of the syzygy spaces of the minimal linear resolution of
//! `Λ_0`, the comultiplicative constants `c_pq(n,i,r)` with
//! `f^n_i = Σ c_pq(n,i,r) f^r_p f^(n-r)_q`, Hochschild cochains with their
//! differentials and cup products, and the Koszul dual `E(Λ)` together with
//! its graded centre.

pub mod algebra;
pub mod check;
pub mod comult;
pub mod hochschild;
pub mod json;
pub mod koszul_dual;
pub mod linalg;
pub mod presentation;
pub mod quiver;
pub mod resolution;
pub mod scalar;
pub mod session;
pub mod tensor;
pub mod verify;

mod error;

pub use algebra::{AlgebraElement, AlgebraError, FiniteDimensionality, GradedAlgebra};
pub use check::CheckFailure;
pub use comult::{ComultSlice, ComultTable};
pub use error::Error;
pub use hochschild::{Cochain, CohomologyClass, CohomologyDims};
pub use koszul_dual::ExtElement;
pub use linalg::{Matrix, SparseVec, Subspace};
pub use presentation::{ParseError, Presentation};
pub use quiver::{Path, Quiver};
pub use resolution::{ResolutionData, ResolutionLevel};
pub use scalar::{Field, Scalar};
pub use session::Session;
pub use tensor::TensorElement;
pub use verify::VerifyReport;
