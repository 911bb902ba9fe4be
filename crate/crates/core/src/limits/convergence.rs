use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{LimitError, LimitModel, TorusModel};
use crate::family::{FamilyKind, FamilyMember, FamilySpec};
use crate::metric::{bfs, diameter};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub size: usize,
    pub diameter: u32,
    /// Largest `|d/D - d_model/diam_model|` over the sampled pairs.
    pub max_error: f64,
    /// `distortion / 2 + codensity` of the comparison map over all pairs.
    pub gh_upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gh_lower: Option<f64>,
    /// Largest word length of a central element, for the Heisenberg family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_diameter: Option<u32>,
    pub sampled_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub family: String,
    pub model: String,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,size,diameter,max_error,gh_upper\n");
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{}", r.n, r.size, r.diameter, r.max_error, r.gh_upper).expect("string write");
        }
        out
    }
}

/// Comparison of one family member with a model, both rescaled to diameter 1.
pub(crate) struct Comparison<'a> {
    pub member: &'a FamilyMember,
    pub model: &'a TorusModel,
    pub diameter: u32,
}

impl Comparison<'_> {
    fn images(&self) -> &[Vec<f64>] {
        self.member.images.as_deref().expect("checked by caller")
    }

    fn error(&self, u: usize, v: usize, graph_dist: u32) -> f64 {
        let im = self.images();
        let model = self.model.distance(&im[u], &im[v]) / self.model.diameter();
        (graph_dist as f64 / self.diameter as f64 - model).abs()
    }

    /// Largest error over all pairs, from vertex 0 alone when the map is
    /// equivariant.
    pub fn distortion(&self) -> f64 {
        let g = &self.member.graph;
        let sources: Vec<usize> =
            if self.member.equivariant { vec![0] } else { (0..g.num_vertices()).collect() };
        sources
            .into_par_iter()
            .map(|u| {
                let row = bfs(g, u).into_raw();
                row.iter().enumerate().map(|(v, &d)| self.error(u, v, d)).fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Covering radius of the image lattice `Z^m / n`, normalized.
    pub fn codensity(&self) -> f64 {
        let exact = if self.model.is_standard_l1() { 1.0 } else { self.model.diameter_upper() / self.model.diameter() };
        exact / self.member.n as f64
    }

    pub fn sampled_error(&self, samples: usize, seed: u64) -> (f64, usize) {
        let g = &self.member.graph;
        let nv = g.num_vertices();
        let per_source = 16;
        let sources = samples.div_ceil(per_source).max(1);
        let err = (0..sources)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((self.member.n as u64) << 32) ^ i as u64);
                let u = rng.gen_range(0..nv);
                let row = bfs(g, u).into_raw();
                (0..per_source)
                    .map(|_| {
                        let v = rng.gen_range(0..nv);
                        self.error(u, v, row[v])
                    })
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max);
        (err, sources * per_source)
    }
}

pub(crate) fn check_model(family: &FamilySpec, model: &LimitModel) -> Result<TorusModel, LimitError> {
    let dim = family.image_dim().ok_or_else(|| LimitError::NoComparisonMap(family.to_string()))?;
    let torus = model.torus();
    if torus.dim() != dim {
        return Err(LimitError::DimensionMismatch { model: torus.dim(), family: dim });
    }
    if !torus.is_unit_lattice() {
        return Err(LimitError::InvalidLattice("family images live in R^m / Z^m".into()));
    }
    Ok(torus)
}

pub(crate) fn fiber_diameter(member: &FamilyMember) -> u32 {
    // central elements (0, 0, c) occupy indices 0..n
    let row = bfs(&member.graph, 0).into_raw();
    row[..member.n].iter().copied().max().unwrap_or(0)
}

/// One row per `n` comparing the rescaled family member with `model`
/// through the family's comparison map.
pub fn convergence_table(
    family: &FamilySpec,
    model: &LimitModel,
    n_list: &[usize],
    samples: usize,
    seed: u64,
    budget: usize,
) -> Result<ConvergenceReport, LimitError> {
    let torus = check_model(family, model)?;
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::with_capacity(ns.len());
    for n in ns {
        let member = family.build(n, budget)?;
        let d = diameter(&member.graph).expect("family members are connected");
        let cmp = Comparison { member: &member, model: &torus, diameter: d };
        let (max_error, sampled_pairs) = cmp.sampled_error(samples, seed);
        let gh_upper = cmp.distortion() / 2.0 + cmp.codensity();
        let fiber = (family.kind == FamilyKind::Heisenberg).then(|| fiber_diameter(&member));
        rows.push(ConvergenceRow {
            n,
            size: member.graph.num_vertices(),
            diameter: d,
            max_error,
            gh_upper,
            gh_lower: None,
            fiber_diameter: fiber,
            sampled_pairs,
        });
    }
    Ok(ConvergenceReport { family: family.to_string(), model: model.to_string(), rows })
}
