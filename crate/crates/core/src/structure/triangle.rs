use rand::Rng;
use serde::Serialize;

use super::StructureError;
use crate::graph::LabeledGraph;
use crate::metric::{bfs, geodesic_to, multi_source, DistanceField};

/// Geodesic triangle with sides `corners[0] -> corners[1]`,
/// `corners[1] -> corners[2]` and `corners[2] -> corners[0]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicTriangle {
    pub corners: [usize; 3],
    pub sides: [Vec<usize>; 3],
    pub fatness: u32,
}

impl GeodesicTriangle {
    /// Triangle on the given corners with smallest-parent BFS geodesics.
    pub fn from_corners(graph: &LabeledGraph, corners: [usize; 3]) -> Result<Self, StructureError> {
        let side = |a: usize, b: usize| -> Result<Vec<usize>, StructureError> {
            geodesic_to(graph, &bfs(graph, a), b).ok_or(StructureError::Disconnected)
        };
        let sides = [side(corners[0], corners[1])?, side(corners[1], corners[2])?, side(corners[2], corners[0])?];
        Self::from_sides(graph, sides)
    }

    /// Triangle from explicit sides, which must be geodesics meeting at their ends.
    pub fn from_sides(graph: &LabeledGraph, sides: [Vec<usize>; 3]) -> Result<Self, StructureError> {
        let corners = [sides[0][0], sides[1][0], sides[2][0]];
        let mut t = GeodesicTriangle { corners, sides, fatness: 0 };
        t.fatness = fatness(graph, &t)?;
        Ok(t)
    }
}

fn is_geodesic(graph: &LabeledGraph, side: &[usize]) -> bool {
    match (side.first(), side.last()) {
        (Some(&a), Some(&b)) => {
            side.windows(2).all(|w| graph.has_edge(w[0], w[1]))
                && bfs(graph, a).get(b) == Some(side.len() as u32 - 1)
        }
        _ => false,
    }
}

/// Exact `min_v sum_i dist(v, s_i)`.
pub fn fatness(graph: &LabeledGraph, triangle: &GeodesicTriangle) -> Result<u32, StructureError> {
    let c = &triangle.corners;
    for (i, side) in triangle.sides.iter().enumerate() {
        if !is_geodesic(graph, side) || side[0] != c[i] || *side.last().expect("nonempty") != c[(i + 1) % 3] {
            return Err(StructureError::NotGeodesic { side: i });
        }
    }
    let fields: Vec<Vec<u32>> = triangle.sides.iter().map(|s| multi_source(graph, s)).collect();
    (0..graph.num_vertices())
        .map(|v| fields.iter().map(|f| f[v] as u64).sum::<u64>())
        .min()
        .map(|m| m.min(u32::MAX as u64) as u32)
        .ok_or(StructureError::Disconnected)
}

fn vertices_at(field: &DistanceField, d: u32) -> impl Iterator<Item = usize> + '_ {
    field.raw().iter().enumerate().filter(move |(_, &x)| x == d).map(|(v, _)| v)
}

/// Searches for a triangle with fatness at least `delta`.
///
/// First tries `w = 0`, `z` farthest from `w`, and every geodesic `x y` of
/// length `D = d(w, z)` with `z` as its midpoint; then random
/// corner triples. At most `budget` triangles are evaluated in total.
pub fn find_fat_triangle<R: Rng>(
    graph: &LabeledGraph,
    delta: f64,
    budget: usize,
    rng: &mut R,
) -> Result<GeodesicTriangle, StructureError> {
    let n = graph.num_vertices();
    if n == 0 || !graph.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let w = 0;
    let from_w = bfs(graph, w);
    let d = from_w.max_reached();
    let z = vertices_at(&from_w, d).next().expect("some vertex realizes the eccentricity");
    let from_z = bfs(graph, z);
    let mut best: Option<GeodesicTriangle> = None;
    let mut tried = 0;
    let consider = |t: GeodesicTriangle, best: &mut Option<GeodesicTriangle>| -> bool {
        let fat = t.fatness as f64 >= delta;
        if best.as_ref().is_none_or(|b| t.fatness > b.fatness) {
            *best = Some(t);
        }
        fat
    };

    'outer: for x in vertices_at(&from_z, d / 2) {
        let from_x = bfs(graph, x);
        for y in vertices_at(&from_z, d - d / 2) {
            if from_x.raw()[y] != d {
                continue;
            }
            if tried >= budget {
                break 'outer;
            }
            tried += 1;
            let mut xy = geodesic_to(graph, &from_x, z).expect("connected");
            let zy = geodesic_to(graph, &from_z, y).expect("connected");
            xy.extend_from_slice(&zy[1..]);
            let wx = geodesic_to(graph, &from_w, x).expect("connected");
            let mut yw = geodesic_to(graph, &from_w, y).expect("connected");
            yw.reverse();
            let t = GeodesicTriangle::from_sides(graph, [wx, xy, yw])?;
            if consider(t, &mut best) {
                return Ok(best.expect("just set"));
            }
        }
    }
    while tried < budget {
        tried += 1;
        let corners = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
        let t = GeodesicTriangle::from_corners(graph, corners)?;
        if consider(t, &mut best) {
            return Ok(best.expect("just set"));
        }
    }
    Err(StructureError::BudgetExhausted { best: best.map_or(0, |b| b.fatness) })
}
