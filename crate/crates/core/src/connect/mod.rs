//! Connectedness of unions of definable stages over the field ℚ(ε) of
//! rational functions in an infinitesimal ε.
//!
//! A schema describes stage `n` of an exhaustion of a subset of the line or
//! the plane. [`ld_connected`] tracks components symbolically, while
//! [`op_connected`] evaluates concrete stages; the two are independent.

mod eventual;
mod expr;
mod field;
mod interval;
mod ld;
mod op;
mod plane;
mod schema;
mod witness;


pub use expr::parse_field;
pub use field::{field_compare, FieldElem};
pub use interval::{normalize, Endpoint, Interval, IntervalSet, SemilinearSet};
pub use ld::{ld_connected, ComponentDescription, LdVerdict};
pub use op::{op_connected, OpVerdict};
pub use plane::{parse_region, ConvexRegion, HalfPlane, PlaneSchema, Point, QuotientComponent, QuotientEdge, Segment};
pub use schema::{parse_semilinear, stage_set, Clause, LineSchema, Schema, StageTerm, MAX_THRESHOLD};
pub use witness::{
    definability_of_union, e_witness_check, line_menu, plane_menu, ps_witness_check, witness_search, Definability,
    Obstruction, Side, Witness, WitnessMode,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConnectError {
    #[error("stage {stage} is not contained in the next stage")]
    NonMonotone { stage: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("the eventual pattern starts only after stage {0}")]
    ThresholdTooLarge(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no component with index {0}")]
    NoSuchComponent(usize),
    #[error("witness and schema live in different dimensions")]
    DimensionMismatch,
}
