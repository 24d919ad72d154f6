use std::time::Duration;

use thiserror::Error;

use crate::grid::Cell;

/// Diagnostics attached to a count that was abandoned because of a budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Partial {
    pub nodes: u64,
    pub elapsed: Duration,
    /// Frontier size when a state limit tripped, otherwise 0.
    pub frontier: usize,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("tile set must allow at least one prototile")]
    EmptyTileSet,
    #[error("invalid tile-set code {0:?}")]
    BadTileCode(String),
    #[error("cell {0} is not in the region")]
    CellNotInRegion(Cell),
    #[error("duplicate cell {0} in custom region")]
    DuplicateCell(Cell),
    #[error("budget exceeded after {} nodes in {:?} (frontier {})", .0.nodes, .0.elapsed, .0.frontier)]
    BudgetExceeded(Partial),
    #[error(
        "region needs a frontier window of {0} cells; the memoized engine supports at most 128"
    )]
    WindowTooWide(usize),
    #[error("invalid tiling: {0}")]
    InvalidTiling(String),
    #[error("flip move is not applicable to this tiling")]
    MoveNotApplicable,
    #[error("region has {count} tilings, more than the limit of {limit}")]
    TooManyTilings {
        count: num_bigint::BigUint,
        limit: u64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
