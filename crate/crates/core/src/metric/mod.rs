//! Word metrics on graphs and groups, and finite metric spaces.

mod bfs;
mod covering;
mod freedom;
mod growth;
mod space;
mod weighted;

use serde::Serialize;
use thiserror::Error;

use crate::groups::GroupError;

pub use bfs::{
    bfs, bfs_masked, bfs_within, diameter, diameter_all_sources, geodesic_to, geodesic_to_rev, multi_source,
    DistanceField, UNREACHABLE,
};
pub use covering::{covering_number, greedy_cover, separated_packing, CoveringReport};
pub use freedom::radius_of_freedom;
pub use growth::{doubling_report, growth_profile, DoublingReport, GrowthProfile};
pub use space::{AxiomViolation, FiniteMetricSpace, PointMetric};
pub use weighted::{weighted_word_length, SandwichReport};

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("profile reaches radius {available} but radius {needed} is required")]
    ProfileTooShort { needed: u64, available: u64 },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not abelian")]
    SubgroupNotAbelian,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Measured quasi-isometry constants of a map: `d_Y(f x, f y)` lies between
/// `d_X(x, y) / multiplicative - additive` and
/// `multiplicative * d_X(x, y) + additive`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QiBounds {
    pub multiplicative: f64,
    pub additive: f64,
    /// Whether the map never increases distances.
    pub lipschitz: bool,
    /// Pair attaining the reported worst constant.
    pub witness: Option<(usize, usize)>,
}
