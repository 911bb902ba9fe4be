use std::collections::BTreeSet;

use serde::Serialize;

use super::StructureError;
use crate::graph::LabeledGraph;
use crate::metric::{bfs, bfs_masked, diameter, multi_source, UNREACHABLE};

/// Separated centers, the graph of their balls, and a sector per vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetDecomposition {
    pub separation: u32,
    pub ball_radius: u32,
    pub centers: Vec<usize>,
    /// Ball index per vertex, if inside a ball.
    pub ball_of: Vec<Option<usize>>,
    /// Adjacency of the ball graph `H`, indexed like `centers`.
    pub h: Vec<Vec<usize>>,
    /// Ball indices in cyclic order when `H` is a cycle of length at least 3.
    pub cyclic_order: Option<Vec<usize>>,
    /// Sector per vertex: its position in `cyclic_order`, or the index of
    /// its ball when `H` is not a cycle.
    pub sector: Vec<usize>,
}

impl NetDecomposition {
    pub fn is_cycle(&self) -> bool {
        self.cyclic_order.is_some()
    }

    pub fn num_sectors(&self) -> usize {
        self.centers.len()
    }
}

/// Net at separation `max(cD/10, 2r + 2)` with balls of radius
/// `r = max(1, floor(cD/100))`.
pub fn net_decomposition(graph: &LabeledGraph, c: f64) -> Result<NetDecomposition, StructureError> {
    assert!(c > 0.0 && c <= 1.0, "c must lie in (0, 1]");
    let d = diameter(graph).map_err(|_| StructureError::Disconnected)? as f64;
    let ball_radius = ((c * d / 100.0).floor() as u32).max(1);
    let separation = ((c * d / 10.0).ceil() as u32).max(2 * ball_radius + 2);
    NetDecomposition::with_params(graph, separation, ball_radius)
}

impl NetDecomposition {
    /// Greedy `separation`-separated centers in index order with balls of
    /// radius `ball_radius`.
    pub fn with_params(graph: &LabeledGraph, separation: u32, ball_radius: u32) -> Result<Self, StructureError> {
        let n = graph.num_vertices();
        if n == 0 || !graph.is_connected() {
            return Err(StructureError::Disconnected);
        }
        let mut nearest = vec![UNREACHABLE; n];
        let mut centers = Vec::new();
        for v in 0..n {
            if nearest[v] >= separation {
                centers.push(v);
                for (m, x) in nearest.iter_mut().zip(bfs(graph, v).into_raw()) {
                    *m = (*m).min(x);
                }
            }
        }

        let mut ball_of = vec![None; n];
        for (b, &x) in centers.iter().enumerate() {
            for (v, &dv) in bfs(graph, x).raw().iter().enumerate() {
                if dv <= ball_radius && ball_of[v].is_none() {
                    ball_of[v] = Some(b);
                }
            }
        }

        // components of the graph with every ball removed
        let outside: Vec<bool> = ball_of.iter().map(Option::is_none).collect();
        let mut component = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if outside[v] && component[v] == usize::MAX {
                let reach = bfs_masked(graph, &[v], &outside);
                let members: Vec<usize> = (0..n).filter(|&u| reach[u] != UNREACHABLE).collect();
                for &u in &members {
                    component[u] = comps.len();
                }
                comps.push(members);
            }
        }
        let attached: Vec<BTreeSet<usize>> = comps
            .iter()
            .map(|members| {
                members
                    .iter()
                    .flat_map(|&u| graph.neighbors(u).iter().filter_map(|&w| ball_of[w as usize]))
                    .collect()
            })
            .collect();

        let k = centers.len();
        let mut h: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
        for balls in &attached {
            for &a in balls {
                for &b in balls {
                    if a != b {
                        h[a].insert(b);
                    }
                }
            }
        }
        for (u, v) in graph.edges() {
            if let (Some(a), Some(b)) = (ball_of[u], ball_of[v]) {
                if a != b {
                    h[a].insert(b);
                    h[b].insert(a);
                }
            }
        }
        let h: Vec<Vec<usize>> = h.into_iter().map(|s| s.into_iter().collect()).collect();
        let cyclic_order = cycle_order(&h);

        let position: Vec<usize> = match &cyclic_order {
            Some(order) => {
                let mut pos = vec![0; k];
                for (i, &b) in order.iter().enumerate() {
                    pos[b] = i;
                }
                pos
            }
            None => (0..k).collect(),
        };
        let comp_sector: Vec<usize> = attached
            .iter()
            .map(|balls| {
                let ps: Vec<usize> = balls.iter().map(|&b| position[b]).collect();
                match (cyclic_order.is_some(), ps.as_slice()) {
                    (true, [a, b]) if (a + 1) % k == *b => *a,
                    (true, [a, b]) if (b + 1) % k == *a => *b,
                    (_, [a, ..]) => *a,
                    // unreachable in a connected graph with at least one ball
                    (_, []) => 0,
                }
            })
            .collect();
        let sector = (0..n)
            .map(|v| match ball_of[v] {
                Some(b) => position[b],
                None => comp_sector[component[v]],
            })
            .collect();
        Ok(NetDecomposition { separation, ball_radius, centers, ball_of, h, cyclic_order, sector })
    }

    /// Distance from every vertex to the nearest center.
    pub fn center_distance(&self, graph: &LabeledGraph) -> Vec<u32> {
        multi_source(graph, &self.centers)
    }
}

/// Cyclic order of `h` when it is a single cycle of length at least 3.
fn cycle_order(h: &[Vec<usize>]) -> Option<Vec<usize>> {
    let k = h.len();
    if k < 3 || h.iter().any(|a| a.len() != 2) {
        return None;
    }
    let mut order = vec![0, h[0][0]];
    while order.len() < k {
        let cur = order[order.len() - 1];
        let prev = order[order.len() - 2];
        let next = if h[cur][0] == prev { h[cur][1] } else { h[cur][0] };
        if next == 0 {
            return None;
        }
        order.push(next);
    }
    let last = order[k - 1];
    h[last].contains(&0).then_some(order)
}
