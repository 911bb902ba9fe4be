use std::collections::VecDeque;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::MetricError;
use crate::graph::LabeledGraph;

/// Marker for vertices not reached by a search.
pub const UNREACHABLE: u32 = u32::MAX;

/// Exact hop distances from one source vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceField {
    source: usize,
    dist: Vec<u32>,
}

impl DistanceField {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn get(&self, v: usize) -> Option<u32> {
        match self.dist[v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Raw distances; unreachable vertices hold [`UNREACHABLE`].
    pub fn raw(&self) -> &[u32] {
        &self.dist
    }

    pub fn into_raw(self) -> Vec<u32> {
        self.dist
    }

    pub fn all_reached(&self) -> bool {
        !self.dist.contains(&UNREACHABLE)
    }

    /// Largest finite distance.
    pub fn max_reached(&self) -> u32 {
        self.dist.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0)
    }

    /// Eccentricity of the source; `None` if some vertex is unreachable.
    pub fn eccentricity(&self) -> Option<u32> {
        self.all_reached().then(|| self.max_reached())
    }

    /// Distances with `-1` for unreachable vertices.
    pub fn signed(&self) -> Vec<i64> {
        self.dist.iter().map(|&d| if d == UNREACHABLE { -1 } else { d as i64 }).collect()
    }
}

impl Serialize for DistanceField {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DistanceField", 3)?;
        s.serialize_field("source", &self.source)?;
        s.serialize_field("connected", &self.all_reached())?;
        s.serialize_field("distances", &self.signed())?;
        s.end()
    }
}

fn search(graph: &LabeledGraph, sources: &[usize], radius: u32) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; graph.num_vertices()];
    let mut queue = VecDeque::with_capacity(graph.num_vertices());
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s as u32);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        if du >= radius {
            continue;
        }
        for &v in graph.neighbors(u as usize) {
            if dist[v as usize] == UNREACHABLE {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn bfs(graph: &LabeledGraph, source: usize) -> DistanceField {
    DistanceField { source, dist: search(graph, &[source], UNREACHABLE) }
}

/// BFS that stops expanding at `radius`; farther vertices stay unreachable.
pub fn bfs_within(graph: &LabeledGraph, source: usize, radius: u32) -> DistanceField {
    DistanceField { source, dist: search(graph, &[source], radius) }
}

/// Distance from every vertex to the nearest of `sources`.
pub fn multi_source(graph: &LabeledGraph, sources: &[usize]) -> Vec<u32> {
    search(graph, sources, UNREACHABLE)
}

/// BFS restricted to vertices where `allowed` is true.
pub fn bfs_masked(graph: &LabeledGraph, sources: &[usize], allowed: &[bool]) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; graph.num_vertices()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if allowed[s] && dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            let v = v as usize;
            if allowed[v] && dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Shortest path from the source of `field` to `target`, following at each
/// step the smallest-index neighbour one level closer.
pub fn geodesic_to(graph: &LabeledGraph, field: &DistanceField, target: usize) -> Option<Vec<usize>> {
    let mut d = field.get(target)?;
    let mut path = vec![target];
    let mut cur = target;
    while d > 0 {
        cur = graph
            .neighbors(cur)
            .iter()
            .map(|&v| v as usize)
            .find(|&v| field.raw()[v] == d - 1)
            .expect("BFS field has a parent on every level");
        path.push(cur);
        d -= 1;
    }
    path.reverse();
    Some(path)
}

/// Same as [`geodesic_to`] but taking the largest-index parent, which gives
/// a second, usually different, geodesic.
pub fn geodesic_to_rev(graph: &LabeledGraph, field: &DistanceField, target: usize) -> Option<Vec<usize>> {
    let mut d = field.get(target)?;
    let mut path = vec![target];
    let mut cur = target;
    while d > 0 {
        cur = graph
            .neighbors(cur)
            .iter()
            .rev()
            .map(|&v| v as usize)
            .find(|&v| field.raw()[v] == d - 1)
            .expect("BFS field has a parent on every level");
        path.push(cur);
        d -= 1;
    }
    path.reverse();
    Some(path)
}

/// Exact diameter. A graph flagged vertex-transitive uses the eccentricity
/// of vertex 0.
pub fn diameter(graph: &LabeledGraph) -> Result<u32, MetricError> {
    if graph.num_vertices() == 0 {
        return Ok(0);
    }
    if graph.is_transitive() {
        return bfs(graph, 0).eccentricity().ok_or(MetricError::Disconnected);
    }
    diameter_all_sources(graph)
}

/// Maximum eccentricity over every source, ignoring any transitivity flag.
pub fn diameter_all_sources(graph: &LabeledGraph) -> Result<u32, MetricError> {
    (0..graph.num_vertices())
        .into_par_iter()
        .map(|s| bfs(graph, s).eccentricity().ok_or(MetricError::Disconnected))
        .try_reduce(|| 0, |a, b| Ok(a.max(b)))
}
