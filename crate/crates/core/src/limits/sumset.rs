use std::collections::BTreeSet;

use serde::Serialize;

use super::LimitError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumsetGap {
    pub n: usize,
    pub sumset_size: usize,
    pub hull_vertices: Vec<[f64; 2]>,
    /// Hausdorff distance from the sumset to its convex hull.
    pub gap: f64,
    /// Hull point realizing the gap.
    pub witness: [f64; 2],
    pub diameter: f64,
    /// `(m + 1) diam K`.
    pub bound: f64,
    pub holds: bool,
}

type P = [f64; 2];

fn key(p: P) -> (i64, i64) {
    // sums of the inputs are snapped to a 1e-9 grid for deduplication
    ((p[0] * 1e9).round() as i64, (p[1] * 1e9).round() as i64)
}

fn cross(o: P, a: P, b: P) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist(a: P, b: P) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Counter-clockwise hull by the monotone chain, collinear points dropped.
fn hull(points: &[P]) -> Vec<P> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<P> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-12 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<P> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-12 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn inside(h: &[P], p: P) -> bool {
    match h.len() {
        0 => false,
        1 => dist(h[0], p) < 1e-9,
        2 => {
            let len = dist(h[0], h[1]);
            cross(h[0], h[1], p).abs() <= 1e-9 * len && dist(h[0], p) + dist(p, h[1]) <= len + 1e-9
        }
        _ => (0..h.len()).all(|i| cross(h[i], h[(i + 1) % h.len()], p) >= -1e-9),
    }
}

fn circumcenter(a: P, b: P, c: P) -> Option<P> {
    let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    if d.abs() < 1e-12 {
        return None;
    }
    let (a2, b2, c2) = (a[0] * a[0] + a[1] * a[1], b[0] * b[0] + b[1] * b[1], c[0] * c[0] + c[1] * c[1]);
    Some([
        (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d,
        (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d,
    ])
}

/// Exact `max_{p in hull(S)} min_{s in S} |p - s|` for a planar set `S`.
///
/// The maximum of the distance-to-`S` function over the hull sits at a hull
/// vertex, a Voronoi vertex inside the hull, or where a Voronoi edge meets
/// the hull boundary; all three candidate families are enumerated.
fn hausdorff_to_hull(s: &[P], h: &[P]) -> (f64, P) {
    let nearest = |p: P| s.iter().map(|&q| dist(p, q)).fold(f64::INFINITY, f64::min);
    let mut cands: Vec<P> = h.to_vec();
    let k = s.len();
    for i in 0..k {
        for j in i + 1..k {
            // bisector of s_i s_j against each hull edge
            let (a, b) = (s[i], s[j]);
            let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
            let dir = [-(b[1] - a[1]), b[0] - a[0]];
            for e in 0..h.len() {
                let (p, q) = (h[e], h[(e + 1) % h.len()]);
                let edge = [q[0] - p[0], q[1] - p[1]];
                let den = dir[0] * edge[1] - dir[1] * edge[0];
                if den.abs() < 1e-12 {
                    continue;
                }
                let t = ((p[0] - mid[0]) * edge[1] - (p[1] - mid[1]) * edge[0]) / den;
                let u = ((p[0] - mid[0]) * dir[1] - (p[1] - mid[1]) * dir[0]) / den;
                if (-1e-12..=1.0 + 1e-12).contains(&u) {
                    cands.push([mid[0] + t * dir[0], mid[1] + t * dir[1]]);
                }
            }
            for l in j + 1..k {
                if let Some(c) = circumcenter(s[i], s[j], s[l]) {
                    if inside(h, c) {
                        cands.push(c);
                    }
                }
            }
        }
    }
    cands.into_iter().map(|p| (nearest(p), p)).fold((0.0, h[0]), |best, c| if c.0 > best.0 { c } else { best })
}

/// Distance from the `n`-fold sumset of a symmetric planar set `K` (with
/// `0` in `K`) to its convex hull, compared with `(m + 1) diam K`, `m = 2`.
pub fn sumset_convexity_gap(k: &[Vec<f64>], n: usize, budget: usize) -> Result<SumsetGap, LimitError> {
    if k.iter().any(|p| p.len() != 2) {
        return Err(LimitError::InvalidPoints("only planar sets are supported".into()));
    }
    let pts: Vec<P> = k.iter().map(|p| [p[0], p[1]]).collect();
    let keys: BTreeSet<(i64, i64)> = pts.iter().map(|&p| key(p)).collect();
    if !keys.contains(&(0, 0)) {
        return Err(LimitError::InvalidPoints("K must contain the origin".into()));
    }
    if pts.iter().any(|&p| !keys.contains(&key([-p[0], -p[1]]))) {
        return Err(LimitError::InvalidPoints("K must be symmetric".into()));
    }
    if n == 0 {
        return Err(LimitError::InvalidPoints("n must be positive".into()));
    }
    let naive = (pts.len() as u128).saturating_pow(n as u32);
    let mut set: Vec<P> = vec![[0.0, 0.0]];
    for _ in 0..n {
        let mut next: BTreeSet<(i64, i64)> = BTreeSet::new();
        let mut out = Vec::new();
        for &a in &set {
            for &b in &pts {
                let s = [a[0] + b[0], a[1] + b[1]];
                if next.insert(key(s)) {
                    out.push(s);
                }
            }
        }
        if out.len() > budget {
            return Err(LimitError::BudgetExceeded { size: naive, budget });
        }
        set = out;
    }
    let h = hull(&set);
    let (gap, witness) = hausdorff_to_hull(&set, &h);
    let diameter = pts.iter().flat_map(|&a| pts.iter().map(move |&b| dist(a, b))).fold(0.0, f64::max);
    let bound = 3.0 * diameter;
    Ok(SumsetGap { n, sumset_size: set.len(), hull_vertices: h, gap, witness, diameter, bound, holds: gap <= bound + 1e-9 })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: distance to `S` maximized over a fine grid of hull points.
    fn grid_gap(g: &SumsetGap, set: &[P], steps: usize) -> f64 {
        let h = &g.hull_vertices;
        let (lo, hi) = h.iter().fold(([f64::MAX; 2], [f64::MIN; 2]), |(lo, hi), p| {
            ([lo[0].min(p[0]), lo[1].min(p[1])], [hi[0].max(p[0]), hi[1].max(p[1])])
        });
        let mut best = 0.0f64;
        for i in 0..=steps {
            for j in 0..=steps {
                let p = [
                    lo[0] + (hi[0] - lo[0]) * i as f64 / steps as f64,
                    lo[1] + (hi[1] - lo[1]) * j as f64 / steps as f64,
                ];
                if inside(h, p) {
                    best = best.max(set.iter().map(|&q| dist(p, q)).fold(f64::INFINITY, f64::min));
                }
            }
        }
        best
    }

    fn sumset(k: &[P], n: usize) -> Vec<P> {
        let mut set = vec![[0.0, 0.0]];
        for _ in 0..n {
            let mut next: Vec<P> = set.iter().flat_map(|a| k.iter().map(move |b| [a[0] + b[0], a[1] + b[1]])).collect();
            next.sort_by_key(|&p| key(p));
            next.dedup_by_key(|p| key(*p));
            set = next;
        }
        set
    }

    fn cross_set() -> Vec<Vec<f64>> {
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]
    }

    #[test]
    fn integer_l1_ball() {
        let g = sumset_convexity_gap(&cross_set(), 4, 100_000).unwrap();
        assert_eq!(g.sumset_size, 41);
        assert_eq!(g.hull_vertices.len(), 4);
        // the midpoint of a boundary edge, e.g. (0.5, 3.5), is sqrt(1/2) away
        assert!((g.gap - 0.5f64.sqrt()).abs() < 1e-9);
        assert!(g.gap <= 1.0 && g.holds);
        assert_eq!(g.bound, 6.0);
    }

    #[test]
    fn skew_generators() {
        let k = vec![vec![0.0, 0.0], vec![2.0, 1.0], vec![-2.0, -1.0], vec![1.0, 2.0], vec![-1.0, -2.0]];
        let g = sumset_convexity_gap(&k, 5, 100_000).unwrap();
        assert!(g.holds);
        assert!(g.gap <= 3.0 * 10f64.sqrt());
        let pts: Vec<P> = k.iter().map(|p| [p[0], p[1]]).collect();
        let oracle = grid_gap(&g, &sumset(&pts, 5), 400);
        assert!(oracle <= g.gap + 1e-9 && g.gap - oracle < 0.05);
    }

    #[test]
    fn single_step_gap_is_within_the_diameter() {
        let k = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![-1.0, -1.0], vec![1.0, -1.0], vec![-1.0, 1.0]];
        let g = sumset_convexity_gap(&k, 1, 1000).unwrap();
        assert!((g.gap - 1.0).abs() < 1e-9);
        assert!(g.gap <= g.diameter);
    }

    #[test]
    fn asymmetric_set_is_rejected() {
        let k = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
        assert!(matches!(sumset_convexity_gap(&k, 2, 100), Err(LimitError::InvalidPoints(_))));
        assert!(matches!(sumset_convexity_gap(&cross_set(), 30, 100), Err(LimitError::BudgetExceeded { .. })));
    }
}
