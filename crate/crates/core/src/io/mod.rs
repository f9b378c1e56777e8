//! Text formats for complexes, exhaustions, glue specs and simplicial maps,
//! and JSON encodings of results.
//!
//! A complex file lists one simplex per line as `S v0 v1 ... vk`, optionally
//! followed by `@stage`; faces are implied and inherit the earliest stage of
//! a listed coface. `STAB v0 ... vk @stage` declares star stability. Lines
//! are comments from `#` on.

mod json;
mod text;

pub use json::{group_json, homology_json, int_json, simplex_json};
pub use text::{
    parse_complex, parse_glue_spec, parse_map, write_complex, write_exhaustion, write_glue_spec, write_map,
    ComplexFile,
};

use thiserror::Error;

use crate::complex::ComplexError;
use crate::homology::HomologyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
