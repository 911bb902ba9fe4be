use serde::Serialize;

use super::{bfs, MetricError};
use crate::graph::LabeledGraph;

/// Ball cardinalities `r -> |B(source, r)|` for `r = 0..=r_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthProfile {
    pub source: usize,
    pub balls: Vec<u64>,
    /// The last entry is the whole space, so the profile is constant beyond it.
    pub saturated: bool,
}

impl GrowthProfile {
    /// Profile from explicit counts, e.g. a closed-form infinite graph.
    pub fn from_counts(balls: Vec<u64>, saturated: bool) -> Self {
        assert!(!balls.is_empty(), "profile needs |B(0)|");
        GrowthProfile { source: 0, balls, saturated }
    }

    pub fn r_max(&self) -> u64 {
        self.balls.len() as u64 - 1
    }

    /// `|B(r)|`, or `None` past the known range of an unsaturated profile.
    pub fn ball(&self, r: u64) -> Option<u64> {
        match self.balls.get(r as usize) {
            Some(&b) => Some(b),
            None if self.saturated => self.balls.last().copied(),
            None => None,
        }
    }

    /// Least-squares slope of `log |B(r)|` against `log r` over `lo..=hi`.
    pub fn exponent_fit(&self, lo: u64, hi: u64) -> f64 {
        let lo = lo.max(1);
        let hi = hi.min(self.r_max());
        assert!(hi > lo, "fit range needs two radii");
        let pts: Vec<(f64, f64)> =
            (lo..=hi).map(|r| ((r as f64).ln(), (self.balls[r as usize] as f64).ln())).collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    }
}

/// Exact ball sizes around `source` from a single BFS, up to its eccentricity.
pub fn growth_profile(graph: &LabeledGraph, source: usize) -> GrowthProfile {
    let field = bfs(graph, source);
    let ecc = field.max_reached() as usize;
    let mut spheres = vec![0u64; ecc + 1];
    for &d in field.raw() {
        if let Some(s) = spheres.get_mut(d as usize) {
            *s += 1;
        }
    }
    let mut total = 0;
    let balls = spheres
        .into_iter()
        .map(|s| {
            total += s;
            total
        })
        .collect();
    GrowthProfile { source, balls, saturated: field.all_reached() }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublingReport {
    pub factor: u64,
    pub q: u32,
    #[serde(rename = "K")]
    pub k: f64,
    /// Smallest tested `R` with `|B(factor R)| <= K |B(R)|`.
    pub witness_radius: Option<u64>,
    /// `(R, |B(factor R)| / |B(R)|)` for every tested `R`.
    pub ratios: Vec<(u64, f64)>,
}

/// Tests `|B(factor R)| <= factor^(2q) |B(R)|` at every radius the profile
/// can answer.
pub fn doubling_report(profile: &GrowthProfile, q: u32, factor: u64) -> Result<DoublingReport, MetricError> {
    assert!(factor >= 2, "scale factor must be at least 2");
    let top = if profile.saturated { (profile.r_max() / factor).max(1) } else { profile.r_max() / factor };
    if top == 0 {
        return Err(MetricError::ProfileTooShort { needed: factor, available: profile.r_max() });
    }
    let k = (factor as f64).powi(2 * q as i32);
    let mut ratios = Vec::with_capacity(top as usize);
    let mut witness_radius = None;
    for r in 1..=top {
        let big = profile.ball(factor * r).expect("radius within range");
        let small = profile.ball(r).expect("radius within range");
        let ratio = big as f64 / small as f64;
        if witness_radius.is_none() && big as f64 <= k * small as f64 {
            witness_radius = Some(r);
        }
        ratios.push((r, ratio));
    }
    Ok(DoublingReport { factor, q, k, witness_radius, ratios })
}
