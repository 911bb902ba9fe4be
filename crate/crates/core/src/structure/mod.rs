//! Detectors for geometric structure in graphs. Every result carries vertex
//! sequences so it can be re-verified independently.

mod caret;
mod cycle;
mod defect;
mod net;
mod triangle;

use thiserror::Error;

pub use caret::{caret_growth_check, max_caret_branch, Caret3, CaretGrowthReport, CaretSearch};
pub use cycle::{shortest_winding_loop, verify_geodesic_cycle, GeodesicCycle};
pub use defect::{line_defect, LineDefect};
pub use net::{net_decomposition, NetDecomposition};
pub use triangle::{fatness, find_fat_triangle, GeodesicTriangle};

#[derive(Debug, Error, PartialEq)]
pub enum StructureError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("side {side} is not a geodesic")]
    NotGeodesic { side: usize },
    #[error("invalid caret witness")]
    InvalidCaret,
    #[error("search budget exhausted; best fatness found {best}")]
    BudgetExhausted { best: u32 },
    #[error("ball graph is not a cycle")]
    NotCycle,
    #[error("an edge jumps between non-adjacent sectors {from} and {to}")]
    SectorJump { from: usize, to: usize },
    #[error("no winding loop within the level window")]
    NoWindingLoop,
    #[error("sequence is not a closed walk")]
    NotClosedWalk,
}
