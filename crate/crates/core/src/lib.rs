//! Exact enumeration of stones-and-bones trimer tilings on the hexagonal grid.
//!
//! Regions are benzels and triangles of hexagonal cells ([`grid`]). They are
//! tiled by translates of five trimers ([`tiles`]): two triangular stones and
//! three straight bones. [`engine`] counts and enumerates tilings exactly,
//! [`theory`] holds closed forms and sequence arithmetic, and [`flips`] builds
//! the graph of tilings connected by local two-tile moves.

pub mod engine;
pub mod error;
pub mod flips;
pub mod grid;
pub mod theory;
pub mod tiles;

pub use engine::{
    cl_statistic, count, count_weighted, count_with, enumerate, Budget, Count, CountOptions,
    EngineKind, Tiling,
};
pub use error::{Error, Result};
pub use grid::{benzel, benzel_by_hexagon_clip, canonical_params, triangle, Cell, Region};
pub use tiles::{placements_covering, placements_in, Placement, PrototileKind, TileSet};
