use serde::Serialize;

use super::GhError;
use crate::graph::LabeledGraph;
use crate::metric::{diameter, multi_source};
use crate::structure::{net_decomposition, shortest_winding_loop, GeodesicCycle, NetDecomposition};

/// `1 / log_3 4`.
pub const DEFAULT_C: f64 = 0.792_481_250_360_578_1;

/// `sqrt(3) / 576`.
const ALPHA: f64 = 0.003_007_032_652_029_300_5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircleOptions {
    /// Exponent `c`: the cycle must be longer than `D^c`.
    pub c: f64,
    /// Fail when `|X| >= (alpha / degree) D^(2 - c)`; otherwise the check is
    /// only recorded.
    pub enforce_volume: bool,
    /// Explicit `(separation, ball radius)` for the net, instead of the
    /// defaults derived from the diameter.
    pub net_params: Option<(u32, u32)>,
}

impl Default for CircleOptions {
    fn default() -> Self {
        CircleOptions { c: DEFAULT_C, enforce_volume: false, net_params: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeCheck {
    pub size: usize,
    pub degree: usize,
    pub alpha: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircleCertificate {
    pub cycle: GeodesicCycle,
    pub length: usize,
    /// `max_v dist(v, cycle)`.
    pub h: u32,
    pub diameter: u32,
    pub c: f64,
    pub volume: VolumeCheck,
    /// Upper bound on the GH distance from the rescaled graph to the
    /// diameter-1 circle.
    pub bound: f64,
}

/// `((2h + 1) + |L/2 - D|) / D + 2 / L`.
pub fn circle_bound(length: usize, h: u32, diameter: u32) -> f64 {
    let (l, d) = (length as f64, diameter as f64);
    ((2 * h + 1) as f64 + (l / 2.0 - d).abs()) / d + 2.0 / l
}

/// Certifies that a graph is close to a circle: a long geodesic cycle that
/// every vertex is near.
pub fn circle_certificate(graph: &LabeledGraph, opts: &CircleOptions) -> Result<CircleCertificate, GhError> {
    let d = diameter(graph).map_err(|_| GhError::Disconnected)?;
    let size = graph.num_vertices();
    let degree = graph.max_degree();
    let bound = ALPHA / degree.max(1) as f64 * (d as f64).powf(2.0 - opts.c);
    let volume = VolumeCheck { size, degree, alpha: ALPHA, bound, holds: (size as f64) < bound };
    if opts.enforce_volume && !volume.holds {
        return Err(GhError::VolumeHypothesis { size, bound });
    }
    let net = match opts.net_params {
        Some((sep, r)) => NetDecomposition::with_params(graph, sep, r),
        None => net_decomposition(graph, 1.0),
    }
    .map_err(GhError::Net)?;
    let cycle = shortest_winding_loop(graph, &net).map_err(GhError::Net)?;
    let required = (d as f64).powf(opts.c);
    if !cycle.geodesic || cycle.length as f64 <= required {
        return Err(GhError::NoGeodesicCycle { length: cycle.length, geodesic: cycle.geodesic, required });
    }
    let h = multi_source(graph, &cycle.vertices).into_iter().max().unwrap_or(0);
    Ok(CircleCertificate { length: cycle.length, bound: circle_bound(cycle.length, h, d), cycle, h, diameter: d, c: opts.c, volume })
}
