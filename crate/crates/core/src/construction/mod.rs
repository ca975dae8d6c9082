//! The layered construction: a background with breaking lines drawn at a
//! given slope, signals fixing the spacing, a machine checking it, and a
//! colouring that is periodic along the lines.

pub mod assemble;
pub mod background;
pub mod bands;
pub mod components;
pub mod layer;
pub mod ptm;
pub mod region;
pub mod skeleton;
pub mod special;
pub mod square;

pub use assemble::{
    assemble_layers, assemble_tau, assemble_tau_with, tau_layers, tau_tile_count_formula, Assembled, DEFAULT_MAX_TILES,
};
pub use background::{Background, Determinism};
pub use components::{gen_component_a, gen_component_c, gen_component_r, gen_component_s, gen_component_w};
pub use layer::{CClass, ClassSet, LayerRule, LayerSpec, Literal};
pub use ptm::{gen_component_p_tm, render_pair_word, PtmLayout, SquareFill};
pub use region::LayeredRegion;
pub use skeleton::{check_skeleton, BgFill, Colour, Colouring, Geometry, Skeleton, SkeletonReport};
pub use square::{SquareProblem, SquareSolution, DEFAULT_SQUARE_BUDGET};
pub use bands::{offset_sync, square_forcing, Band, CRules, OffsetSync, SquareForcing, DEFAULT_BAND_BUDGET};
pub use special::{plan_slope, planned_slope, transform_for_slope, SlopePlan, SpecialCase};
