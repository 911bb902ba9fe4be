use std::collections::HashMap;

use serde::Serialize;

use super::StructureError;
use crate::graph::LabeledGraph;
use crate::metric::{bfs, diameter, geodesic_to, geodesic_to_rev, growth_profile};

/// Three geodesics of length `r` from a common center that spread apart at
/// unit speed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Caret3 {
    pub center: usize,
    pub r: u32,
    pub branches: [Vec<usize>; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaretSearch {
    pub r: u32,
    pub caret: Option<Caret3>,
}

/// Distance rows, computed on first use.
struct Rows<'a> {
    graph: &'a LabeledGraph,
    rows: HashMap<usize, Vec<u32>>,
}

impl<'a> Rows<'a> {
    fn new(graph: &'a LabeledGraph) -> Self {
        Rows { graph, rows: HashMap::new() }
    }

    fn get(&mut self, u: usize, v: usize) -> u32 {
        let graph = self.graph;
        self.rows.entry(u).or_insert_with(|| bfs(graph, u).into_raw())[v]
    }
}

fn compatible(rows: &mut Rows, a: &[usize], b: &[usize]) -> bool {
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if (rows.get(x, y) as usize) < i.max(j) {
                return false;
            }
        }
    }
    true
}

impl Caret3 {
    /// Re-checks the definition from scratch.
    pub fn verify(&self, graph: &LabeledGraph) -> bool {
        let mut rows = Rows::new(graph);
        let geodesic = self.branches.iter().all(|b| {
            b.len() == self.r as usize + 1
                && b[0] == self.center
                && b.windows(2).all(|w| graph.has_edge(w[0], w[1]))
                && rows.get(self.center, b[self.r as usize]) == self.r
        });
        geodesic
            && compatible(&mut rows, &self.branches[0], &self.branches[1])
            && compatible(&mut rows, &self.branches[0], &self.branches[2])
            && compatible(&mut rows, &self.branches[1], &self.branches[2])
    }
}

fn caret_of_length(graph: &LabeledGraph, v0: usize, r: u32, rows: &mut Rows) -> Option<Caret3> {
    let field = bfs(graph, v0);
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for t in (0..graph.num_vertices()).filter(|&t| field.raw()[t] == r) {
        for path in [geodesic_to(graph, &field, t), geodesic_to_rev(graph, &field, t)].into_iter().flatten() {
            if !candidates.contains(&path) {
                candidates.push(path);
            }
        }
    }
    let c = candidates.len();
    let mut memo: Vec<Option<bool>> = vec![None; c * c];
    let mut ok = |i: usize, j: usize, rows: &mut Rows| -> bool {
        *memo[i * c + j].get_or_insert_with(|| compatible(rows, &candidates[i], &candidates[j]))
    };
    for i in 0..c {
        for j in i + 1..c {
            if !ok(i, j, rows) {
                continue;
            }
            for k in j + 1..c {
                if ok(i, k, rows) && ok(j, k, rows) {
                    return Some(Caret3 {
                        center: v0,
                        r,
                        branches: [candidates[i].clone(), candidates[j].clone(), candidates[k].clone()],
                    });
                }
            }
        }
    }
    None
}

/// Largest `r <= r_max` with a 3-caret at `v0` built from BFS-tree
/// geodesics. Carets truncate to shorter carets, so the search stops at
/// the first radius without one.
pub fn max_caret_branch(graph: &LabeledGraph, v0: usize, r_max: u32) -> CaretSearch {
    let ecc = bfs(graph, v0).max_reached();
    let mut rows = Rows::new(graph);
    let mut best = CaretSearch { r: 0, caret: None };
    for r in 1..=r_max.min(ecc) {
        match caret_of_length(graph, v0, r, &mut rows) {
            Some(c) => best = CaretSearch { r, caret: Some(c) },
            None => break,
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaretGrowthReport {
    pub r: u32,
    pub ball: u64,
    /// `r^(log_3 4)`
    pub local_bound: f64,
    pub local_holds: bool,
    pub vertices: usize,
    pub diameter: u32,
    pub c: f64,
    /// `eps` with `r = eps D^c`.
    pub eps: f64,
    /// `(1/2) eps^(log_3 4 - 1) D^(1 + c (log_3 4 - 1))`
    pub global_bound: f64,
    pub global_holds: bool,
}

/// Volume consequences of a caret in a vertex-transitive graph.
pub fn caret_growth_check(graph: &LabeledGraph, caret: &Caret3, c: f64) -> Result<CaretGrowthReport, StructureError> {
    if !caret.verify(graph) {
        return Err(StructureError::InvalidCaret);
    }
    let lambda = 4f64.ln() / 3f64.ln();
    let r = caret.r;
    let ball = growth_profile(graph, caret.center).ball(r as u64).expect("saturated profile");
    let local_bound = (r as f64).powf(lambda);
    let d = diameter(graph).map_err(|_| StructureError::Disconnected)?;
    let eps = r as f64 / (d as f64).powf(c);
    let global_bound = 0.5 * eps.powf(lambda - 1.0) * (d as f64).powf(1.0 + c * (lambda - 1.0));
    Ok(CaretGrowthReport {
        r,
        ball,
        local_bound,
        local_holds: ball as f64 >= local_bound,
        vertices: graph.num_vertices(),
        diameter: d,
        c,
        eps,
        global_bound,
        global_holds: graph.num_vertices() as f64 > global_bound,
    })
}
