//! Finite and exhausted simplicial complexes.
//!
//! An [`Exhaustion`] presents a locally finite, possibly infinite complex as
//! the union of a nested sequence of finite complexes. Local finiteness is
//! carried as a checkable certificate: each simplex declares the stage after
//! which its star no longer grows.

mod admissible;
mod exhaustion;
mod finite;
mod glue;
mod simplex;

use thiserror::Error;

pub use admissible::{shrink_exhaustion, AdmissibleSubset, ShrinkCover};
pub use exhaustion::{ComponentReport, Exhaustion, GeneratedStage, StageGenerator};
pub use finite::FiniteComplex;
pub use glue::{glue_complexes, GlueSpec, Glued, Identification};
pub use simplex::{Simplex, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("simplex has no vertices")]
    EmptySimplex,
    #[error("vertex {0} repeated in simplex")]
    RepeatedVertex(VertexId),
    #[error("simplex {simplex} is missing its face {face}")]
    MissingFace { simplex: Simplex, face: Simplex },
    #[error("simplex {0} not found")]
    SimplexNotFound(Simplex),
    #[error("exhaustion has no stages")]
    NoStages,
    #[error("stage {0} is not contained in stage {}", .0 + 1)]
    NotNested(usize),
    #[error("no star-stability declaration for {0}")]
    MissingStability(Simplex),
    #[error("star of {simplex} grows at stage {stage}, past its declared stability stage")]
    StarUnstable { simplex: Simplex, stage: usize },
    #[error("stage budget {budget} exceeds the {materialized} materialized stages")]
    BudgetBeyondPrefix { budget: usize, materialized: usize },
    #[error("cannot materialize {0} stages without a generator")]
    NoGenerator(usize),
    #[error("glue spec refers to missing part {0}")]
    UnknownPart(usize),
    #[error("vertex {vertex} is not in part {part}")]
    UnknownGlueVertex { part: usize, vertex: VertexId },
    #[error("identification {from} -> {to} is not injective")]
    NotInjective { from: usize, to: usize },
    #[error("identifications merge vertices {first} and {second} of part {part}")]
    InconsistentIdentification {
        part: usize,
        first: VertexId,
        second: VertexId,
    },
    #[error("identification {from} -> {to} does not carry {simplex} to a simplex")]
    NonIsomorphicIdentification {
        from: usize,
        to: usize,
        simplex: Simplex,
    },
}

/// Face-closure-verified complex from a raw simplex set.
pub fn validate_complex<I>(raw: I) -> Result<FiniteComplex, ComplexError>
where
    I: IntoIterator<Item = Simplex>,
{
    FiniteComplex::validate(raw)
}

pub fn star(k: &FiniteComplex, sigma: &Simplex) -> Result<FiniteComplex, ComplexError> {
    k.star(sigma)
}

pub fn euler_characteristic(k: &FiniteComplex) -> i64 {
    k.euler_characteristic()
}
