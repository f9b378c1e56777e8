//! Integer simplicial homology.
//!
//! Everything reduces to Smith normal forms over arbitrary-precision
//! integers: homology groups, induced maps, exactness of the pair sequence,
//! excision, and homology of an exhaustion as a direct limit of its stages.

mod abelian;
mod chain;
mod colimit;
mod groups;
mod les;
mod maps;
mod matrix;
mod snf;

use thiserror::Error;

use crate::complex::{ComplexError, Simplex, VertexId};

pub use abelian::{is_exact_at, kernel_basis, FgAbGroup, HomMap, Lattice};
pub use chain::{boundary_matrix, ChainComplex};
pub use colimit::{colimit_homology, ColimitHomology};
pub use groups::{homology, homology_all, relative_homology, HomologyGroup};
pub use les::{excision_check, long_exact_sequence, ExactnessNode, LesDegree, LongExactSequence};
pub use maps::{induced_map, induced_pair_map, induces_zero, SimplicialMap};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("A is not a subcomplex of K")]
    NotSubcomplex,
    #[error("vertex map does not carry {0} to a simplex")]
    NotSimplicial(Simplex),
    #[error("vertex {0} has no image")]
    UnmappedVertex(VertexId),
    #[error("map does not carry the subcomplex into the target subcomplex")]
    PairNotPreserved,
    #[error("chain is not a cycle in degree {0}")]
    NotACycle(usize),
    #[error("chain has {got} coefficients, expected {expected}")]
    ChainLength { expected: usize, got: usize },
    #[error("excision precondition fails at {simplex}: {reason}")]
    PreconditionViolated { simplex: Simplex, reason: &'static str },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
