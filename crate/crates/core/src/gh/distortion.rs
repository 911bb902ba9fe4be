use rayon::prelude::*;
use serde::Serialize;

use super::{gh_bruteforce, GhError, MAX_BRUTEFORCE_POINTS};
use crate::metric::{greedy_cover, separated_packing, FiniteMetricSpace};

/// Quality of a map `f: X -> Y`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapDistortion {
    /// Least `e` with `(1 - e) d - e <= d' <= (1 + e) d + e` on all pairs
    /// and every point of `Y` within `e` of the image.
    pub eps: f64,
    /// `max |d_Y(f x, f x') - d_X(x, x')|`.
    pub distortion: f64,
    /// `max_y d_Y(y, f(X))`.
    pub codensity: f64,
    /// `distortion / 2 + codensity`, an upper bound on the GH distance.
    pub gh_upper: f64,
    /// Pair attaining `distortion`.
    pub witness: (usize, usize),
    pub map: Vec<usize>,
}

pub fn map_distortion(x: &FiniteMetricSpace, y: &FiniteMetricSpace, f: &[usize]) -> Result<MapDistortion, GhError> {
    if x.is_empty() || y.is_empty() {
        return Err(GhError::Empty);
    }
    if f.len() != x.len() || f.iter().any(|&v| v >= y.len()) {
        return Err(GhError::InvalidMap { got: f.len(), expected: x.len() });
    }
    let (distortion, rel, witness) = (0..x.len())
        .into_par_iter()
        .map(|i| {
            let (rx, ry) = (x.row(i), y.row(f[i]));
            (0..x.len()).fold((0.0f64, 0.0f64, (i, i)), |(dis, rel, w), j| {
                let gap = (ry[f[j]] - rx[j]).abs();
                let w = if gap > dis { (i, j) } else { w };
                (dis.max(gap), rel.max(gap / (rx[j] + 1.0)), w)
            })
        })
        .reduce(|| (0.0, 0.0, (0, 0)), |a, b| if b.0 > a.0 { (b.0, a.1.max(b.1), b.2) } else { (a.0, a.1.max(b.1), a.2) });
    let mut image = f.to_vec();
    image.sort_unstable();
    image.dedup();
    let codensity = image
        .par_iter()
        .map(|&v| y.row(v))
        .reduce_with(|a, b| a.into_iter().zip(b).map(|(p, q)| p.min(q)).collect())
        .expect("nonempty image")
        .into_iter()
        .fold(0.0, f64::max);
    Ok(MapDistortion {
        eps: rel.max(codensity),
        distortion,
        codensity,
        gh_upper: distortion / 2.0 + codensity,
        witness,
        map: f.to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum LowerReason {
    DiameterGap,
    /// A `4 eps`-separated set in one space outnumbers a greedy `eps`-cover
    /// of the other.
    CoveringGap { eps: f64, packing: usize, cover: usize },
    BruteForce,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBound {
    pub value: f64,
    pub reason: LowerReason,
}

/// Scales at which the covering argument is tried.
fn scales(x: &FiniteMetricSpace, y: &FiniteMetricSpace, dx: &[Vec<f64>], dy: &[Vec<f64>]) -> Vec<f64> {
    let mut vals: Vec<f64> = dx.iter().chain(dy).flatten().copied().filter(|&d| d > 0.0).collect();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let top = x.diameter().max(y.diameter());
    if vals.len() > 48 {
        let lo = vals[0];
        vals = (0..48).map(|i| lo * (top / lo).powf(i as f64 / 47.0)).collect();
    }
    // distance d clears a 4 eps separation just below eps = d / 4
    vals.iter().flat_map(|&d| [d / 4.0 * (1.0 - 1e-9), d]).filter(|&e| e > 0.0 && e <= top).collect()
}

/// Largest of the diameter gap `|diam X - diam Y| / 2` and the covering
/// obstruction over a set of scales.
pub fn gh_lower_bounds(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> LowerBound {
    let mut best = LowerBound { value: (x.diameter() - y.diameter()).abs() / 2.0, reason: LowerReason::DiameterGap };
    if best.value == 0.0 {
        best.reason = LowerReason::Trivial;
    }
    let (mx, my) = (x.to_matrix(), y.to_matrix());
    let (dx, dy) = (mx.distance_matrix(), my.distance_matrix());
    let found: Vec<LowerBound> = scales(x, y, &dx, &dy)
        .into_par_iter()
        .filter_map(|eps| {
            [(&mx, &my), (&my, &mx)].into_iter().find_map(|(a, b)| {
                let packing = separated_packing(a, 4.0 * eps).len();
                let cover = greedy_cover(b, eps).len();
                (packing > cover).then_some(LowerBound { value: eps, reason: LowerReason::CoveringGap { eps, packing, cover } })
            })
        })
        .collect();
    for lb in found {
        if lb.value > best.value {
            best = lb;
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GHEstimate {
    pub lower: f64,
    pub upper: f64,
    pub lower_reason: LowerReason,
    pub witness: Option<MapDistortion>,
}

/// Bounds on the GH distance: exact when `|X| + |Y|` is small enough for
/// the brute-force search, otherwise the lower bounds and the map `f`.
pub fn gh_estimate(x: &FiniteMetricSpace, y: &FiniteMetricSpace, f: Option<&[usize]>) -> Result<GHEstimate, GhError> {
    let witness = f.map(|f| map_distortion(x, y, f)).transpose()?;
    if x.len() + y.len() <= MAX_BRUTEFORCE_POINTS {
        let exact = gh_bruteforce(x, y)?;
        return Ok(GHEstimate { lower: exact, upper: exact, lower_reason: LowerReason::BruteForce, witness });
    }
    let lb = gh_lower_bounds(x, y);
    // a correspondence pairing everything has distortion at most max(diam X, diam Y)
    let trivial = x.diameter().max(y.diameter()) / 2.0;
    let upper = witness.as_ref().map_or(trivial, |w| w.gh_upper.min(trivial));
    Ok(GHEstimate { lower: lb.value.min(upper), upper, lower_reason: lb.reason, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::metric::PointMetric;

    fn two_point() -> FiniteMetricSpace {
        FiniteMetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    #[test]
    fn identity_map_is_exact() {
        let x = FiniteMetricSpace::from_graph(catalog::petersen()).unwrap();
        let d = map_distortion(&x, &x, &(0..10).collect::<Vec<_>>()).unwrap();
        assert_eq!((d.eps, d.distortion, d.codensity), (0.0, 0.0, 0.0));
    }

    #[test]
    fn hundred_cycle_onto_circle() {
        let x = FiniteMetricSpace::from_graph(catalog::cycle(100)).unwrap().normalized();
        let pts: Vec<Vec<f64>> = (0..1000).map(|i| vec![2.0 * i as f64 / 1000.0]).collect();
        let y = FiniteMetricSpace::from_points(pts, PointMetric::Circle { circumference: 2.0 }).unwrap();
        let f: Vec<usize> = (0..100).map(|i| 10 * i).collect();
        let d = map_distortion(&x, &y, &f).unwrap();
        assert!(d.eps <= 0.02);
        assert!(d.distortion < 1e-12);
    }

    #[test]
    fn constant_map_is_far() {
        let d = map_distortion(&two_point(), &two_point(), &[0, 0]).unwrap();
        assert!(d.eps >= 0.5);
        assert_eq!(d.distortion, 1.0);
    }

    #[test]
    fn restricting_the_codomain_to_the_image() {
        let x = FiniteMetricSpace::from_graph(catalog::cycle(6)).unwrap();
        let y = FiniteMetricSpace::from_graph(catalog::cycle(12)).unwrap();
        let f: Vec<usize> = (0..6).map(|i| 2 * i).collect();
        let full = map_distortion(&x, &y, &f).unwrap();
        let image = y.subspace(&f);
        let onto = map_distortion(&x, &image, &(0..6).collect::<Vec<_>>()).unwrap();
        assert!(onto.eps <= full.eps);
        assert_eq!(onto.codensity, 0.0);
    }

    #[test]
    fn lower_bounds() {
        let p = FiniteMetricSpace::point();
        let lb = gh_lower_bounds(&p, &two_point());
        assert_eq!(lb.value, 0.5);
        assert_eq!(lb.reason, LowerReason::DiameterGap);
        let x = FiniteMetricSpace::from_graph(catalog::petersen()).unwrap();
        assert_eq!(gh_lower_bounds(&x, &x).value, 0.0);
    }

    #[test]
    fn expander_is_far_from_the_circle() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let x = FiniteMetricSpace::from_graph(catalog::random_regular(512, 3, &mut rng)).unwrap().normalized();
        let pts: Vec<Vec<f64>> = (0..400).map(|i| vec![2.0 * i as f64 / 400.0]).collect();
        let y = FiniteMetricSpace::from_points(pts, PointMetric::Circle { circumference: 2.0 }).unwrap();
        let lb = gh_lower_bounds(&x, &y);
        assert!(lb.value > 0.05, "{lb:?}");
        assert!(matches!(lb.reason, LowerReason::CoveringGap { .. }));
    }

    #[test]
    fn estimate_is_exact_on_small_inputs() {
        let e = gh_estimate(&FiniteMetricSpace::point(), &two_point(), Some(&[0])).unwrap();
        assert_eq!((e.lower, e.upper), (0.5, 0.5));
        assert!(e.witness.unwrap().gh_upper >= 0.5);
    }
}
