use serde::Serialize;

use crate::graph::LabeledGraph;
use crate::metric::{bfs, diameter, geodesic_to, geodesic_to_rev, multi_source};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineDefect {
    pub center: usize,
    pub r: u32,
    /// `max_{v in B(center, r)} dist(v, segment)` for the best segment tried.
    pub defect: u32,
    pub segment: Vec<usize>,
    pub segments_tried: usize,
}

/// Upper bound on how far the ball `B(center, r)` strays from a single
/// geodesic segment.
///
/// Candidates are geodesics `x -> center -> y` with `d(x, y)` equal to the
/// diameter; if no diameter pair passes through `center`, the segment from
/// `center` to its farthest vertex is used. At most `budget` endpoints `x`
/// are scanned.
pub fn line_defect(graph: &LabeledGraph, center: usize, r: u32, budget: usize) -> LineDefect {
    let n = graph.num_vertices();
    let from_c = bfs(graph, center);
    let ball: Vec<usize> = (0..n).filter(|&v| from_c.raw()[v] <= r).collect();
    let diam = diameter(graph).expect("connected graph");

    let score = |segment: &[usize]| -> u32 {
        let d = multi_source(graph, segment);
        ball.iter().map(|&v| d[v]).max().unwrap_or(0)
    };
    let mut best: Option<(u32, Vec<usize>)> = None;
    let mut tried = 0;
    let mut ends: Vec<usize> = (0..n).filter(|&x| 2 * from_c.raw()[x] >= diam).collect();
    ends.sort_by_key(|&x| (std::cmp::Reverse(from_c.raw()[x]), x));
    for &x in ends.iter().take(budget.max(1)) {
        let dx = from_c.raw()[x];
        let row = bfs(graph, x).into_raw();
        for y in (0..n).filter(|&y| row[y] == diam && dx + from_c.raw()[y] == diam) {
            for (mut left, right) in [
                (geodesic_to(graph, &from_c, x), geodesic_to(graph, &from_c, y)),
                (geodesic_to_rev(graph, &from_c, x), geodesic_to_rev(graph, &from_c, y)),
            ]
            .map(|(a, b)| (a.expect("connected"), b.expect("connected")))
            {
                left.reverse();
                left.extend_from_slice(&right[1..]);
                tried += 1;
                let s = score(&left);
                if best.as_ref().is_none_or(|(b, _)| s < *b) {
                    best = Some((s, left));
                }
            }
        }
    }
    let (defect, segment) = best.unwrap_or_else(|| {
        let far = (0..n).max_by_key(|&v| (from_c.raw()[v], std::cmp::Reverse(v))).expect("nonempty graph");
        let seg = geodesic_to(graph, &from_c, far).expect("connected");
        tried += 1;
        (score(&seg), seg)
    });
    LineDefect { center, r, defect, segment, segments_tried: tried }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn cycle_is_locally_a_line() {
        assert_eq!(line_defect(&catalog::cycle(100), 0, 10, 100).defect, 0);
    }

    #[test]
    fn prism_defect_is_one() {
        assert_eq!(line_defect(&catalog::prism(60), 0, 6, 200).defect, 1);
    }

    #[test]
    fn tree_branches_stray() {
        let rep = line_defect(&catalog::regular_tree_ball(3, 5), 0, 5, 200);
        assert!(rep.defect >= 4);
    }
}
