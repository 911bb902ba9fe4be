//! Gromov-Hausdorff bounds between finite metric spaces and limit models.

mod brute;
mod certify;
mod circle;
mod distortion;

use thiserror::Error;

use crate::family::FamilyError;
use crate::limits::LimitError;
use crate::metric::MetricError;
use crate::structure::StructureError;

pub use brute::{gh_bruteforce, MAX_BRUTEFORCE_POINTS};
pub use certify::{certify_family, Certification};
pub use circle::{circle_bound, circle_certificate, CircleCertificate, CircleOptions, VolumeCheck, DEFAULT_C};
pub use distortion::{gh_estimate, gh_lower_bounds, map_distortion, GHEstimate, LowerBound, LowerReason, MapDistortion};

#[derive(Debug, Error, PartialEq)]
pub enum GhError {
    #[error("{points} points exceed the brute-force limit of {max}")]
    TooLarge { points: usize, max: usize },
    #[error("empty metric space")]
    Empty,
    #[error("map has {got} entries for {expected} points, or leaves the codomain")]
    InvalidMap { got: usize, expected: usize },
    #[error("volume hypothesis fails: {size} vertices against the bound {bound:.4}")]
    VolumeHypothesis { size: usize, bound: f64 },
    #[error("net decomposition: {0}")]
    Net(StructureError),
    #[error("no qualifying geodesic cycle: length {length}, geodesic {geodesic}, required length above {required:.2}")]
    NoGeodesicCycle { length: usize, geodesic: bool, required: f64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("n = {n}, stage {stage}: {message}")]
    Stage { n: usize, stage: &'static str, message: String },
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}
