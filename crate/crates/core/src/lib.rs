//! Directions of periodicity of two-dimensional tiling systems.
//!
//! The crate covers tiling systems given by forbidden patterns, the
//! strip-graph decision procedure for a fixed period vector, budgeted
//! enumeration of slopes, Turing machines and their compilation to Wang
//! tiles, and the layered construction realizing a slope set from a
//! machine.

pub mod bitset;
pub mod construction;
pub mod csp;
pub mod error;
pub mod fixtures;
pub mod machine;
pub mod periodicity;
pub mod slopes;
pub mod tiling;
pub mod tm_tiles;

pub use error::{Error, Result};
pub use tiling::{
    check_east_deterministic, slope_of, validate_patch, validate_periodic, wang_to_patterns, Cell,
    Pattern, PeriodVector, PeriodicConfig, Rule, Slope, Tile, TilingSystem, Track, Transform,
    Violation, WangTile,
};
