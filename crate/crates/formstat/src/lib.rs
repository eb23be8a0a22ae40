//! Arithmetic and statistics for catalogs of weight-2 newforms of prime level.
//!
//! The crate is organised bottom-up: [`arith`] holds the exact and numeric
//! kernels, [`dataset`] loads and queries catalogs, and the analysis modules
//! build on both.

pub mod alsigns;
pub mod arith;
pub mod collisions;
pub mod dataset;
pub mod error;
pub mod fitmodels;
pub mod genus2;
pub mod heckepoly;
pub mod hilbert;
pub mod langtrotter;
pub mod numfield;

pub use error::{Error, Result};

/// Lower end (exclusive) of the level range used by the per-prime statistics.
pub const RANGE_LO: u64 = 10_000;
/// Upper end (exclusive) of the level range covered by the catalog.
pub const RANGE_HI: u64 = 2_000_000;
