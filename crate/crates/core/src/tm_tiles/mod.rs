//! Wang tiles simulating Turing machines and transducers, and a bounded
//! rectangle solver for them.

mod compile;
mod region;
mod strip;

pub use compile::{
    check_simulation_equivalence, compile_tm, extract_trace, rectangle_tileable, rectangle_tileable_with,
    tm_tile_count, HLabel, RectangleAssignment, RectangleInstance, TileClass, TmTile, TmTileSet, VLabel,
};
pub use region::{WangRegion, DEFAULT_CELL_BUDGET, DEFAULT_STEP_BUDGET};
pub use strip::{transducer_strips, transducer_to_tiles};
