//! Command-line workbench: cached counts, published tables, problem checks,
//! OEIS comparison and SVG rendering.

pub mod cache;
pub mod counter;
pub mod error;
pub mod fixtures;
pub mod oeis;
pub mod svg;
pub mod table;
pub mod verify;

pub use cache::{Cache, CacheRecord};
pub use counter::{Counter, RegionSpec};
pub use error::{CliError, CliResult};
