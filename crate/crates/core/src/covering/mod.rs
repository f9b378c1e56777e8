//! Covering complexes built from subgroups of the edge-path group.
//!
//! A vertex of the total space is a pair (coset, base vertex), numbered
//! `coset · |V| + position of the base vertex`. The edge over `u → w`
//! leads from coset `c` to `c · g_uw`, where `g_uw` is the edge's label in
//! the spanning-tree presentation. Infinite-index subgroups give lazily
//! generated covers whose stages are balls of cosets in word length.

mod finite;
mod lazy;
mod verify;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{ComplexError, Exhaustion, FiniteComplex, Simplex, VertexId};
use crate::group::{CosetTable, EdgePathPresentation, GroupError, Word};

pub use finite::{finite_cover, lift_walk, subgroup_from_permutations};
pub use lazy::{lazy_cover, Rewriting};
pub use verify::{deck_count, verify_covering, verify_subgroup_image, CoverCheck, DeckCount, SubgroupImage};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("coset enumeration exceeded the budget of {0} cosets")]
    BudgetExceeded(usize),
    #[error("cannot decide coset equality without a rewriting system")]
    WordProblemUnresolved,
    #[error("lift of {simplex} from sheet {sheet} does not close up")]
    InconsistentLift { simplex: Simplex, sheet: usize },
    #[error("rewriting rules do not reduce relator {0} to the empty word")]
    RelatorNotTrivial(usize),
    #[error("rewriting did not terminate within {0} steps")]
    RewritingDiverged(usize),
    #[error("coset table is not a complete action satisfying the relators and fixing the subgroup")]
    InvalidTable,
    #[error("permutations do not define an action of the presented group")]
    NotAnAction,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Debug)]
pub enum CoverTotal {
    Finite(FiniteComplex),
    Lazy(Exhaustion),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheets {
    Finite(usize),
    /// Only a ball of cosets of this radius has been generated.
    Prefix { radius: usize, cosets: usize },
}

/// A simplicial covering map `total → base`.
#[derive(Clone, Debug)]
pub struct CoveringComplex {
    pub base: FiniteComplex,
    pub basepoint: VertexId,
    pub total: CoverTotal,
    pub projection: BTreeMap<VertexId, VertexId>,
    /// Coset (sheet) of every total-space vertex.
    pub sheet: BTreeMap<VertexId, usize>,
    pub sheets: Sheets,
    /// Vertices whose stars may be incomplete in the generated prefix.
    pub frontier: BTreeSet<VertexId>,
    pub edge_path: EdgePathPresentation,
    /// Subgroup generators the cover was built from.
    pub subgroup: Vec<Word>,
    pub table: Option<CosetTable>,
}

impl CoveringComplex {
    /// The finite total space, or the last generated stage of a lazy one.
    pub fn total_complex(&self) -> &FiniteComplex {
        match &self.total {
            CoverTotal::Finite(k) => k,
            CoverTotal::Lazy(x) => x.last(),
        }
    }

    pub fn sheet_count(&self) -> Option<usize> {
        match self.sheets {
            Sheets::Finite(d) => Some(d),
            Sheets::Prefix { .. } => None,
        }
    }

    /// Lift of the basepoint on sheet 0.
    pub fn base_lift(&self) -> VertexId {
        vertex_id(0, position(&self.base, self.basepoint), self.base.count(0))
    }

    pub fn project(&self, v: VertexId) -> VertexId {
        self.projection[&v]
    }

    /// Complex spanned by the vertices off the frontier.
    pub fn interior(&self) -> FiniteComplex {
        self.total_complex().induced(|v| !self.frontier.contains(&v))
    }
}

pub(crate) fn vertex_id(coset: usize, pos: usize, base_vertices: usize) -> VertexId {
    VertexId(u32::try_from(coset * base_vertices + pos).expect("total space too large"))
}

pub(crate) fn position(base: &FiniteComplex, v: VertexId) -> usize {
    base.simplices(0)
        .binary_search(&Simplex::vertex(v))
        .expect("base vertex")
}
