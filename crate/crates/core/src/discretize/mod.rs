//! Net graphs of finite metric samples and their quasi-isometry constants.

mod sample;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gh::{map_distortion, GhError};
use crate::graph::{Label, LabeledGraph};
use crate::metric::{bfs, FiniteMetricSpace, MetricError, QiBounds, UNREACHABLE};

pub use sample::{read_sample, Sample, SampleMetric};

#[derive(Debug, Error, PartialEq)]
pub enum DiscretizeError {
    #[error("t must be positive")]
    NonPositiveScale,
    #[error("net graph has {components} components")]
    Disconnected { components: usize },
    #[error("pair ({0}, {1}): graph distance {2} violates the {3} bound against ambient distance {4}")]
    Violation(usize, usize, f64, &'static str, f64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Gh(#[from] GhError),
}

/// Greedy subset in index order whose points are pairwise at least `t`
/// apart, up to a relative tolerance of `1e-9`; every other point is within
/// `t` of it.
pub fn max_separated_net(sample: &FiniteMetricSpace, t: f64) -> Result<Vec<usize>, DiscretizeError> {
    if t.is_nan() || t <= 0.0 {
        return Err(DiscretizeError::NonPositiveScale);
    }
    let sep = t * (1.0 - 1e-9);
    let mut nearest = vec![f64::INFINITY; sample.len()];
    let mut net = Vec::new();
    for i in 0..sample.len() {
        if nearest[i] >= sep {
            net.push(i);
            for (m, d) in nearest.iter_mut().zip(sample.row(i)) {
                *m = m.min(d);
            }
        }
    }
    Ok(net)
}

/// Graph on net points, adjacent when at ambient distance at most `4t`;
/// each edge has length `4t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetGraph {
    /// Sample indices of the net points; vertex `i` is `points[i]`.
    pub points: Vec<usize>,
    pub t: f64,
    pub edge_length: f64,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    pub graph: LabeledGraph,
}

impl NetGraph {
    /// Graph metric with edge length `4t`.
    pub fn metric(&self) -> FiniteMetricSpace {
        FiniteMetricSpace::from_graph(self.graph.clone()).expect("net graphs are connected").with_scale(1.0 / self.edge_length)
    }
}

pub fn net_graph(
    sample: &FiniteMetricSpace,
    net: &[usize],
    t: f64,
    labels: Option<&[String]>,
) -> Result<NetGraph, DiscretizeError> {
    if t.is_nan() || t <= 0.0 {
        return Err(DiscretizeError::NonPositiveScale);
    }
    let reach = 4.0 * t;
    let edges: Vec<(usize, usize)> = (0..net.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let row = sample.row(net[i]);
            (i + 1..net.len()).filter(move |&j| row[net[j]] <= reach).map(move |j| (i, j)).collect::<Vec<_>>()
        })
        .collect();
    let mut graph = LabeledGraph::from_edges(net.len(), edges.iter().copied()).expect("indices in range");
    if let Some(names) = labels {
        graph = graph.with_labels(net.iter().map(|&p| Label::Text(names[p].clone())).collect());
    }
    let components = count_components(&graph);
    if components > 1 {
        return Err(DiscretizeError::Disconnected { components });
    }
    Ok(NetGraph { points: net.to_vec(), t, edge_length: reach, edges, graph })
}

fn count_components(g: &LabeledGraph) -> usize {
    let mut seen = vec![false; g.num_vertices()];
    let mut count = 0;
    for v in 0..g.num_vertices() {
        if !seen[v] {
            count += 1;
            for (u, &d) in bfs(g, v).raw().iter().enumerate() {
                if d != UNREACHABLE {
                    seen[u] = true;
                }
            }
        }
    }
    count
}

/// Exhaustive check over net pairs that `d_ambient <= d_graph` and
/// `d_graph <= 4 ceil(d_ambient / t) t`. The reported constants satisfy
/// `d_graph <= multiplicative (d_ambient + additive)` with `additive = t`.
pub fn verify_qi(net: &NetGraph, sample: &FiniteMetricSpace) -> Result<QiBounds, DiscretizeError> {
    let k = net.points.len();
    if k <= 1 {
        return Ok(QiBounds { multiplicative: 1.0, additive: 0.0, lipschitz: true, witness: None });
    }
    let t = net.t;
    let per_source: Vec<Result<(f64, (usize, usize)), DiscretizeError>> = (0..k)
        .into_par_iter()
        .map(|i| {
            let hops = bfs(&net.graph, i).into_raw();
            let amb = sample.row(net.points[i]);
            let mut worst = (1.0f64, (i, i));
            for j in 0..k {
                if i == j {
                    continue;
                }
                let dg = hops[j] as f64 * net.edge_length;
                let da = amb[net.points[j]];
                if da > dg + 1e-9 {
                    return Err(DiscretizeError::Violation(i, j, dg, "Lipschitz", da));
                }
                let chain = 4.0 * ((da / t) - 1e-9).ceil().max(1.0) * t;
                if dg > chain + 1e-9 {
                    return Err(DiscretizeError::Violation(i, j, dg, "chaining", da));
                }
                let ratio = dg / (da + t);
                if ratio > worst.0 {
                    worst = (ratio, (i, j));
                }
            }
            Ok(worst)
        })
        .collect();
    let mut best = (1.0, None);
    for r in per_source {
        let (ratio, pair) = r?;
        if ratio > best.0 {
            best = (ratio, Some(pair));
        }
    }
    Ok(QiBounds { multiplicative: best.0, additive: t, lipschitz: true, witness: best.1 })
}

/// Net graph of a sample at scale `t`, its QI constants, and the GH upper
/// bound between the two after both are rescaled to diameter 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscretizeReport {
    pub t: f64,
    pub sample_size: usize,
    pub net_size: usize,
    pub edges: usize,
    pub qi: QiBounds,
    pub gh_upper: f64,
}

pub fn discretize(sample: &FiniteMetricSpace, t: f64, labels: Option<&[String]>) -> Result<(NetGraph, DiscretizeReport), DiscretizeError> {
    let net = max_separated_net(sample, t)?;
    let ng = net_graph(sample, &net, t, labels)?;
    let qi = verify_qi(&ng, sample)?;
    let gh_upper = if net.len() > 1 {
        let x = ng.metric().normalized();
        let y = sample.clone().normalized();
        map_distortion(&x, &y, &net)?.gh_upper
    } else if sample.diameter() > 0.0 {
        // a point is at distance diam / 2 from any space
        0.5
    } else {
        0.0
    };
    let report = DiscretizeReport { t, sample_size: sample.len(), net_size: net.len(), edges: ng.edges.len(), qi, gh_upper };
    Ok((ng, report))
}
