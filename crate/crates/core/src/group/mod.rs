//! Edge-path groups, coset enumeration, and Hurewicz/Whitehead checks.

mod coset;
mod edge_path;
mod hurewicz;
mod presentation;
mod word;

use thiserror::Error;

use crate::complex::VertexId;
use crate::homology::HomologyError;

pub use coset::{todd_coxeter, CosetTable, EnumerationStatus};
pub use edge_path::{edge_path_presentation, EdgePathPresentation, SpanningTreeData};
pub use hurewicz::{
    hurewicz_h1_check, pi1_certified_trivial, pi2_via_hurewicz, whitehead_check, HurewiczH1, Pi2,
    WhiteheadVerdict,
};
pub use presentation::{abelianization, Presentation};
pub use word::{generator_name, parse_word, Letter, Word, WordDisplay};

/// Default coset budget.
pub const DEFAULT_COSET_BUDGET: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("complex is not connected")]
    Disconnected,
    #[error("basepoint {0} is not a vertex of the complex")]
    VertexNotFound(VertexId),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
