use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use super::{NetDecomposition, StructureError};
use crate::graph::LabeledGraph;
use crate::metric::bfs;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicCycle {
    /// Cyclic vertex sequence; the closing edge runs from the last vertex
    /// back to the first.
    pub vertices: Vec<usize>,
    pub length: usize,
    pub geodesic: bool,
    /// Net sector winding, when found through a decomposition.
    pub winding: Option<i32>,
}

/// True iff the cycle has at least 3 distinct vertices and every pair on it
/// is as far apart in the graph as along the cycle.
pub fn verify_geodesic_cycle(graph: &LabeledGraph, cycle: &[usize]) -> Result<bool, StructureError> {
    let l = cycle.len();
    if l == 0 || cycle.iter().any(|&v| v >= graph.num_vertices()) {
        return Err(StructureError::NotClosedWalk);
    }
    if l >= 2 && !(0..l).all(|i| graph.has_edge(cycle[i], cycle[(i + 1) % l])) {
        return Err(StructureError::NotClosedWalk);
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if l < 3 || sorted.len() != l {
        return Ok(false);
    }
    Ok((0..l).into_par_iter().all(|i| {
        let f = bfs(graph, cycle[i]);
        (0..l).all(|j| {
            let along = i.abs_diff(j).min(l - i.abs_diff(j)) as u32;
            f.raw()[cycle[j]] == along
        })
    }))
}

/// Winding step across an edge between sectors `a` and `b` of `k`.
fn step(a: usize, b: usize, k: usize) -> Result<i64, StructureError> {
    if a == b {
        Ok(0)
    } else if (a + 1) % k == b {
        Ok(1)
    } else if (b + 1) % k == a {
        Ok(-1)
    } else {
        Err(StructureError::SectorJump { from: a, to: b })
    }
}

/// Shortest closed walk whose sector projection winds once around the ball
/// cycle of `net`.
///
/// BFS runs in the cover whose states are `(vertex, lifted sector level)`,
/// from each vertex of sector 0 at level 0 to the same vertex at level `k`,
/// with levels confined to `[-k, 2k]`.
pub fn shortest_winding_loop(graph: &LabeledGraph, net: &NetDecomposition) -> Result<GeodesicCycle, StructureError> {
    let order = net.cyclic_order.as_ref().ok_or(StructureError::NotCycle)?;
    let k = order.len();
    let n = graph.num_vertices();
    for (u, v) in graph.edges() {
        step(net.sector[u], net.sector[v], k)?;
    }
    let lo = -(k as i64);
    let levels = (3 * k + 1) as i64;
    let starts: Vec<usize> = (0..n).filter(|&v| net.sector[v] == 0).collect();

    let best = starts
        .par_iter()
        .filter_map(|&s| {
            let idx = |v: usize, lvl: i64| (lvl - lo) as usize * n + v;
            let mut parent = vec![u32::MAX; n * levels as usize];
            let mut dist = vec![u32::MAX; n * levels as usize];
            let mut queue = VecDeque::from([(s, 0i64)]);
            dist[idx(s, 0)] = 0;
            let target = idx(s, k as i64);
            while let Some((u, lu)) = queue.pop_front() {
                let here = idx(u, lu);
                if here == target {
                    break;
                }
                for &v in graph.neighbors(u) {
                    let v = v as usize;
                    let lv = lu + step(net.sector[u], net.sector[v], k).expect("checked above");
                    if lv < lo || lv >= lo + levels {
                        continue;
                    }
                    let there = idx(v, lv);
                    if dist[there] == u32::MAX {
                        dist[there] = dist[here] + 1;
                        parent[there] = here as u32;
                        queue.push_back((v, lv));
                    }
                }
            }
            if dist[target] == u32::MAX {
                return None;
            }
            let mut walk = Vec::new();
            let mut cur = target;
            while cur != idx(s, 0) {
                walk.push(cur % n);
                cur = parent[cur] as usize;
            }
            walk.push(s);
            walk.reverse();
            walk.pop();
            Some(walk)
        })
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .ok_or(StructureError::NoWindingLoop)?;

    let geodesic = verify_geodesic_cycle(graph, &best)?;
    Ok(GeodesicCycle { length: best.len(), vertices: best, geodesic, winding: Some(1) })
}
