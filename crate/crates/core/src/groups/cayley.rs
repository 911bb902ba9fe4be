use std::collections::{HashMap, HashSet};

use super::spec::{GenSet, GroupElement, GroupSpec};
use super::GroupError;
use crate::graph::{Label, LabeledGraph};
use crate::metric::{bfs, bfs_within, multi_source, QiBounds, UNREACHABLE};

/// Cayley graph with its vertex <-> element correspondence.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub graph: LabeledGraph,
    pub elements: Vec<GroupElement>,
    pub index: HashMap<GroupElement, usize>,
}

impl CayleyGraph {
    pub fn vertex_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }
}

/// Cayley graph of `spec` with edges `{g, g s}` for `s` in `gens`.
pub fn build_cayley(spec: &GroupSpec, gens: &GenSet, budget: usize) -> Result<CayleyGraph, GroupError> {
    let elements = spec.elements(budget)?;
    let order = elements.len() as u64;
    let (reached, _) = spec.closure(gens.elements(), budget)?;
    if (reached.len() as u64) < order {
        return Err(GroupError::NotGenerating { reached: reached.len(), order });
    }
    let index: HashMap<GroupElement, usize> =
        elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let mut edges = Vec::with_capacity(elements.len() * gens.len());
    for (i, g) in elements.iter().enumerate() {
        for s in gens.elements() {
            edges.push((i, index[&spec.multiply(g, s)]));
        }
    }
    let graph = LabeledGraph::from_edges(elements.len(), edges)
        .expect("indices are in range")
        .with_labels(elements.iter().cloned().map(Label::Element).collect())
        .declare_transitive()
        .expect("Cayley graphs are regular");
    Ok(CayleyGraph { graph, elements, index })
}

/// Cayley-Abels graph `(G, H, S)` for the stabilizer `H` of a base point in
/// the natural action; vertices are the points of the orbit.
#[derive(Clone, Debug)]
pub struct CayleyAbels {
    pub spec: GroupSpec,
    pub graph: LabeledGraph,
    pub base_point: usize,
    pub stabilizer: Vec<GroupElement>,
    /// `H S H`, the bi-invariant closure of the requested generators.
    pub closed_gens: GenSet,
    /// One group element per vertex mapping the base point to it.
    pub coset_reps: Vec<GroupElement>,
    budget: usize,
}

pub fn build_cayley_abels(
    spec: &GroupSpec,
    base_point: usize,
    gens: &GenSet,
    budget: usize,
) -> Result<CayleyAbels, GroupError> {
    let degree = spec.action_degree().ok_or(GroupError::NoAction)?;
    if base_point >= degree {
        return Err(GroupError::InvalidSpec(format!("base point {base_point} outside domain of {degree}")));
    }
    let elements = spec.elements(budget)?;
    let mut reps: Vec<Option<GroupElement>> = vec![None; degree];
    let mut stabilizer = Vec::new();
    for g in &elements {
        let p = spec.act(g, base_point).expect("domain point");
        if reps[p].is_none() {
            reps[p] = Some(g.clone());
        }
        if p == base_point {
            stabilizer.push(g.clone());
        }
    }
    let orbit = reps.iter().filter(|r| r.is_some()).count();
    if orbit != degree {
        return Err(GroupError::Intransitive { orbit, degree });
    }
    if degree == 1 {
        return Err(GroupError::TrivialQuotient);
    }
    let coset_reps: Vec<GroupElement> = reps.into_iter().map(|r| r.expect("transitive")).collect();

    let mut closed = Vec::new();
    let mut seen = HashSet::new();
    for s in gens.elements() {
        for h1 in &stabilizer {
            let h1s = spec.multiply(h1, s);
            for h2 in &stabilizer {
                let x = spec.multiply(&h1s, h2);
                if seen.insert(x.clone()) {
                    closed.push(x);
                }
            }
        }
    }
    let closed_gens = GenSet::symmetric(spec, closed)?;

    let neighbor_points: Vec<usize> = closed_gens
        .elements()
        .iter()
        .map(|s| spec.act(s, base_point).expect("domain point"))
        .collect();
    let mut edges = Vec::new();
    for (p, rep) in coset_reps.iter().enumerate() {
        for &q0 in &neighbor_points {
            edges.push((p, spec.act(rep, q0).expect("domain point")));
        }
    }
    let graph = LabeledGraph::from_edges(degree, edges)
        .expect("points are in range")
        .with_labels((0..degree).map(Label::Coset).collect())
        .declare_transitive()
        .expect("Cayley-Abels graphs are regular");
    if !graph.is_connected() {
        return Err(GroupError::NotGenerating { reached: 0, order: elements.len() as u64 });
    }
    Ok(CayleyAbels {
        spec: spec.clone(),
        graph,
        base_point,
        stabilizer,
        closed_gens,
        coset_reps,
        budget,
    })
}

impl CayleyAbels {
    /// Vertex of the coset `g H`.
    pub fn project(&self, g: &GroupElement) -> usize {
        self.spec.act(g, self.base_point).expect("domain point")
    }

    /// Compares `(G, HSH)` with this graph through `g -> g H`.
    ///
    /// Both metrics are invariant under left translation, so distances from
    /// the identity suffice. The projection is 1-Lipschitz; `additive` is the
    /// largest loss `|g|_S - d(x0, g x0)`.
    pub fn projection_qi(&self) -> Result<QiBounds, GroupError> {
        let cay = super::build_cayley(&self.spec, &self.closed_gens, self.budget)?;
        let from_id = bfs(&cay.graph, cay.index[&self.spec.identity()]);
        let from_base = bfs(&self.graph, self.base_point);
        let mut worst = 0u32;
        let mut witness = None;
        let mut lipschitz = true;
        for (i, g) in cay.elements.iter().enumerate() {
            let dg = from_id.raw()[i];
            let dx = from_base.raw()[self.project(g)];
            if dx > dg {
                lipschitz = false;
            }
            let loss = dg.saturating_sub(dx);
            if loss > worst {
                worst = loss;
                witness = Some((0, i));
            }
        }
        Ok(QiBounds { multiplicative: 1.0, additive: worst as f64, lipschitz, witness })
    }

    /// True when the projection of the `r`-ball around the identity in
    /// `(G, HSH)` is exactly the `r`-ball around the base point.
    pub fn ball_projects_onto(&self, r: u32) -> Result<bool, GroupError> {
        let cay = super::build_cayley(&self.spec, &self.closed_gens, self.budget)?;
        let from_id = bfs_within(&cay.graph, cay.index[&self.spec.identity()], r);
        let image: HashSet<usize> = cay
            .elements
            .iter()
            .enumerate()
            .filter(|(i, _)| from_id.raw()[*i] != UNREACHABLE)
            .map(|(_, g)| self.project(g))
            .collect();
        let ball = bfs_within(&self.graph, self.base_point, r);
        let target: HashSet<usize> =
            (0..self.graph.num_vertices()).filter(|&v| ball.raw()[v] != UNREACHABLE).collect();
        Ok(image == target)
    }
}

/// Graph on an orbit with edges between points at distance at most `2m+1`.
#[derive(Clone, Debug)]
pub struct FiniteIndexSubgraph {
    pub graph: LabeledGraph,
    /// Vertex `i` of `graph` is `orbit[i]` in the ambient graph.
    pub orbit: Vec<usize>,
    pub m: u32,
    /// Measured constants of the inclusion of the new graph into the old one.
    pub qi: QiBounds,
    /// `max degree <= d^(2m+1)` with `d` the ambient maximum degree.
    pub degree_bound_holds: bool,
}

pub fn finite_index_subgraph(x: &LabeledGraph, orbit: &[usize], m: u32) -> Result<FiniteIndexSubgraph, GroupError> {
    if orbit.is_empty() {
        return Err(GroupError::EmptyOrbit);
    }
    assert!(m >= 1, "index parameter must be positive");
    if !x.is_connected() {
        return Err(GroupError::Disconnected);
    }
    let mut orbit: Vec<usize> = orbit.to_vec();
    orbit.sort_unstable();
    orbit.dedup();
    let to_dense = multi_source(x, &orbit);
    let codensity = *to_dense.iter().max().expect("nonempty graph");
    if codensity > m {
        return Err(GroupError::OrbitNotDense { m, distance: codensity });
    }
    let reach = 2 * m + 1;
    let rows: Vec<Vec<u32>> = orbit.iter().map(|&o| bfs(x, o).into_raw()).collect();
    let mut edges = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, &o) in orbit.iter().enumerate().skip(i + 1) {
            if row[o] <= reach {
                edges.push((i, j));
            }
        }
    }
    let mut graph = LabeledGraph::from_edges(orbit.len(), edges).expect("indices in range");
    if let Some(labels) = x.labels() {
        graph = graph.with_labels(orbit.iter().map(|&o| labels[o].clone()).collect());
    }

    let mut mult: f64 = 1.0;
    let mut witness = None;
    let mut lipschitz = true;
    for i in 0..orbit.len() {
        let inner = bfs(&graph, i);
        for j in 0..orbit.len() {
            if i == j {
                continue;
            }
            let d_new = inner.raw()[j] as f64;
            let d_old = rows[i][orbit[j]] as f64;
            if d_new > d_old {
                lipschitz = false;
            }
            let ratio = (d_old / d_new).max(d_new / d_old);
            if ratio > mult {
                mult = ratio;
                witness = Some((i, j));
            }
        }
    }
    let d = x.max_degree() as f64;
    let degree_bound_holds = (graph.max_degree() as f64) <= d.powi(reach as i32);
    Ok(FiniteIndexSubgraph {
        graph,
        orbit,
        m,
        qi: QiBounds { multiplicative: mult, additive: codensity as f64, lipschitz, witness },
        degree_bound_holds,
    })
}
