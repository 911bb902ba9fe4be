use serde::Serialize;

use super::{circle_certificate, gh_lower_bounds, CircleCertificate, CircleOptions, GhError};
use crate::family::{FamilyKind, FamilyMember, FamilySpec};
use crate::limits::{ConvergenceReport, ConvergenceRow, LimitModel, TorusModel};
use crate::limits::convergence::{check_model, fiber_diameter, Comparison};
use crate::metric::{diameter, FiniteMetricSpace, PointMetric};

/// Largest member for which a covering lower bound is computed.
const LOWER_BOUND_MAX_VERTICES: usize = 1500;
/// Largest model sample used for the lower bound.
const MODEL_SAMPLE: usize = 1600;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certification {
    pub report: ConvergenceReport,
    pub certificates: Vec<CircleCertificate>,
    pub tolerance: f64,
    /// Upper bounds strictly decrease in `n` and the last is within the
    /// tolerance.
    pub pass: bool,
}

/// Grid sample of a standard model, rescaled to diameter 1, with its
/// normalized covering radius.
fn model_sample(model: &TorusModel, n: usize) -> Option<(FiniteMetricSpace, f64)> {
    if !model.is_standard_l1() {
        return None;
    }
    let m = model.dim();
    let mut s = (2 * n).max(4);
    while s.pow(m as u32) > MODEL_SAMPLE {
        s -= 1;
    }
    let pts: Vec<Vec<f64>> = (0..s.pow(m as u32))
        .map(|i| (0..m).map(|j| ((i / s.pow(j as u32)) % s) as f64 / s as f64).collect())
        .collect();
    let metric = if m == 1 { PointMetric::Circle { circumference: 1.0 } } else { PointMetric::L1Torus };
    let space = FiniteMetricSpace::from_points(pts, metric).ok()?.with_scale(model.diameter());
    Some((space, 1.0 / s as f64))
}

fn lower_bound(member: &FamilyMember, model: &TorusModel) -> Option<f64> {
    if member.graph.num_vertices() > LOWER_BOUND_MAX_VERTICES {
        return None;
    }
    let (sample, cov) = model_sample(model, member.n)?;
    let x = FiniteMetricSpace::from_graph(member.graph.clone()).ok()?.normalized();
    Some((gh_lower_bounds(&x, &sample).value - cov).max(0.0))
}

/// Upper and lower GH bounds per `n` between the rescaled family and the
/// model. Circle models go through the circle certificate; families with a
/// comparison map also contribute their map bound, and the smaller upper
/// bound is reported.
pub fn certify_family(
    family: &FamilySpec,
    model: &LimitModel,
    n_list: &[usize],
    tol: f64,
    samples: usize,
    seed: u64,
    budget: usize,
) -> Result<Certification, GhError> {
    let stage = |n: usize, stage: &'static str| move |e: GhError| GhError::Stage { n, stage, message: e.to_string() };
    let torus = match family.image_dim() {
        Some(_) => Some(check_model(family, model)?),
        None => None,
    };
    if torus.is_none() && !matches!(model, LimitModel::Circle) {
        return Err(crate::limits::LimitError::NoComparisonMap(family.to_string()).into());
    }
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::new();
    let mut certificates = Vec::new();
    for n in ns {
        let member = family.build(n, budget).map_err(|e| stage(n, "build")(e.into()))?;
        let d = diameter(&member.graph).map_err(|e| stage(n, "diameter")(e.into()))?;
        let mut upper = f64::INFINITY;
        let (mut max_error, mut pairs) = (0.0, 0);
        if let LimitModel::Circle = model {
            let cert = circle_certificate(&member.graph, &CircleOptions::default()).map_err(stage(n, "circle_certificate"))?;
            upper = cert.bound;
            certificates.push(cert);
        }
        if let Some(t) = &torus {
            let cmp = Comparison { member: &member, model: t, diameter: d };
            (max_error, pairs) = cmp.sampled_error(samples, seed);
            upper = upper.min(cmp.distortion() / 2.0 + cmp.codensity());
        }
        let gh_lower = lower_bound(&member, &torus.clone().unwrap_or_else(TorusModel::circle));
        rows.push(ConvergenceRow {
            n,
            size: member.graph.num_vertices(),
            diameter: d,
            max_error,
            gh_upper: upper,
            gh_lower,
            fiber_diameter: (family.kind == FamilyKind::Heisenberg).then(|| fiber_diameter(&member)),
            sampled_pairs: pairs,
        });
    }
    let pass = !rows.is_empty()
        && rows.windows(2).all(|w| w[1].gh_upper < w[0].gh_upper)
        && rows.last().is_some_and(|r| r.gh_upper <= tol);
    let report = ConvergenceReport { family: family.to_string(), model: model.to_string(), rows };
    Ok(Certification { report, certificates, tolerance: tol, pass })
}
