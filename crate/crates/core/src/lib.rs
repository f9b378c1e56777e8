//! Exact computations on locally finite simplicial complexes presented as
//! exhaustions by finite complexes.

pub mod complex;
pub mod connect;
pub mod dsu;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod group;
pub mod covering;
