use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{bfs, diameter, MetricError};
use crate::graph::LabeledGraph;

/// Metric on coordinate points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum PointMetric {
    Euclidean,
    /// `l1` metric on the unit torus `R^m / Z^m`.
    L1Torus,
    /// Arc length on a circle of the given circumference, one coordinate in
    /// `[0, circumference)`.
    Circle { circumference: f64 },
}

impl PointMetric {
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        match self {
            PointMetric::Euclidean => x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt(),
            PointMetric::L1Torus => x
                .iter()
                .zip(y)
                .map(|(a, b)| {
                    let t = (a - b).rem_euclid(1.0);
                    t.min(1.0 - t)
                })
                .sum(),
            PointMetric::Circle { circumference } => {
                let t = (x[0] - y[0]).rem_euclid(*circumference);
                t.min(circumference - t)
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Backing {
    Matrix { n: usize, d: Vec<f64> },
    Graph(LabeledGraph),
    Points { coords: Vec<Vec<f64>>, metric: PointMetric },
}

/// A finite metric space, with distances divided by `scale`.
#[derive(Clone, Debug)]
pub struct FiniteMetricSpace {
    backing: Backing,
    scale: f64,
}

/// A failed metric axiom at the given points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum AxiomViolation {
    Identity(usize),
    Symmetry(usize, usize),
    Triangle(usize, usize, usize),
}

impl FiniteMetricSpace {
    pub fn from_matrix(rows: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MetricError::InvalidInput("distance matrix is not square".into()));
        }
        if rows.iter().flatten().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(MetricError::InvalidInput("distances must be finite and non-negative".into()));
        }
        Ok(FiniteMetricSpace { backing: Backing::Matrix { n, d: rows.into_iter().flatten().collect() }, scale: 1.0 })
    }

    /// Word metric of a connected graph.
    pub fn from_graph(graph: LabeledGraph) -> Result<Self, MetricError> {
        if !graph.is_connected() {
            return Err(MetricError::Disconnected);
        }
        Ok(FiniteMetricSpace { backing: Backing::Graph(graph), scale: 1.0 })
    }

    pub fn from_points(coords: Vec<Vec<f64>>, metric: PointMetric) -> Result<Self, MetricError> {
        if let Some(first) = coords.first() {
            if coords.iter().any(|c| c.len() != first.len()) {
                return Err(MetricError::InvalidInput("points have different dimensions".into()));
            }
            if matches!(metric, PointMetric::Circle { .. }) && first.len() != 1 {
                return Err(MetricError::InvalidInput("circle points have one coordinate".into()));
            }
        }
        Ok(FiniteMetricSpace { backing: Backing::Points { coords, metric }, scale: 1.0 })
    }

    /// The one-point space.
    pub fn point() -> Self {
        Self::from_matrix(vec![vec![0.0]]).expect("valid")
    }

    pub fn len(&self) -> usize {
        match &self.backing {
            Backing::Matrix { n, .. } => *n,
            Backing::Graph(g) => g.num_vertices(),
            Backing::Points { coords, .. } => coords.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Same space with distances divided by `scale`.
    pub fn with_scale(mut self, scale: f64) -> Self {
        assert!(scale > 0.0, "scale must be positive");
        self.scale = scale;
        self
    }

    /// Rescaled to diameter 1 (unchanged if the diameter is 0).
    pub fn normalized(self) -> Self {
        let raw = self.diameter() * self.scale;
        if raw > 0.0 {
            self.with_scale(raw)
        } else {
            self
        }
    }

    pub fn graph(&self) -> Option<&LabeledGraph> {
        match &self.backing {
            Backing::Graph(g) => Some(g),
            _ => None,
        }
    }

    pub fn coords(&self) -> Option<&[Vec<f64>]> {
        match &self.backing {
            Backing::Points { coords, .. } => Some(coords),
            _ => None,
        }
    }

    /// Distance between two points. Graph-backed spaces run a BFS per call;
    /// use [`row`](Self::row) or [`distance_matrix`](Self::distance_matrix)
    /// for bulk queries.
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        let raw = match &self.backing {
            Backing::Matrix { n, d } => d[i * n + j],
            Backing::Graph(g) => bfs(g, i).raw()[j] as f64,
            Backing::Points { coords, metric } => metric.eval(&coords[i], &coords[j]),
        };
        raw / self.scale
    }

    /// Distances from `i` to every point.
    pub fn row(&self, i: usize) -> Vec<f64> {
        match &self.backing {
            Backing::Matrix { n, d } => d[i * n..(i + 1) * n].iter().map(|x| x / self.scale).collect(),
            Backing::Graph(g) => bfs(g, i).raw().iter().map(|&x| x as f64 / self.scale).collect(),
            Backing::Points { coords, metric } => {
                coords.iter().map(|c| metric.eval(&coords[i], c) / self.scale).collect()
            }
        }
    }

    pub fn distance_matrix(&self) -> Vec<Vec<f64>> {
        (0..self.len()).into_par_iter().map(|i| self.row(i)).collect()
    }

    pub fn diameter(&self) -> f64 {
        match &self.backing {
            Backing::Graph(g) => diameter(g).expect("graph spaces are connected") as f64 / self.scale,
            _ => (0..self.len())
                .into_par_iter()
                .map(|i| self.row(i).into_iter().fold(0.0, f64::max))
                .reduce(|| 0.0, f64::max),
        }
    }

    /// Explicit-matrix copy with the current scale applied.
    pub fn to_matrix(&self) -> FiniteMetricSpace {
        FiniteMetricSpace::from_matrix(self.distance_matrix()).expect("metric rows are valid")
    }

    /// Explicit-matrix restriction to `points`, in that order.
    pub fn subspace(&self, points: &[usize]) -> FiniteMetricSpace {
        let rows = points
            .par_iter()
            .map(|&i| {
                let row = self.row(i);
                points.iter().map(|&j| row[j]).collect()
            })
            .collect();
        FiniteMetricSpace::from_matrix(rows).expect("metric rows are valid")
    }

    /// Checks the metric axioms up to `tol`: exhaustively for at most 500
    /// points, otherwise on `samples` random triples.
    pub fn check_axioms<R: Rng>(&self, tol: f64, samples: usize, rng: &mut R) -> Result<(), AxiomViolation> {
        let n = self.len();
        if n <= 500 {
            let d = self.distance_matrix();
            for i in 0..n {
                if d[i][i].abs() > tol {
                    return Err(AxiomViolation::Identity(i));
                }
                for j in 0..n {
                    if (d[i][j] - d[j][i]).abs() > tol {
                        return Err(AxiomViolation::Symmetry(i, j));
                    }
                    if i != j && d[i][j] <= tol {
                        return Err(AxiomViolation::Identity(i));
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if d[i][k] > d[i][j] + d[j][k] + tol {
                            return Err(AxiomViolation::Triangle(i, j, k));
                        }
                    }
                }
            }
            return Ok(());
        }
        for _ in 0..samples {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let (ri, rj) = (self.row(i), self.row(j));
            if ri[i].abs() > tol {
                return Err(AxiomViolation::Identity(i));
            }
            if (ri[j] - rj[i]).abs() > tol {
                return Err(AxiomViolation::Symmetry(i, j));
            }
            if ri[k] > ri[j] + rj[k] + tol {
                return Err(AxiomViolation::Triangle(i, j, k));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn graph_space_is_a_metric() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = FiniteMetricSpace::from_graph(catalog::petersen()).unwrap();
        assert_eq!(s.check_axioms(0.0, 0, &mut rng), Ok(()));
        let big = FiniteMetricSpace::from_graph(catalog::grid_torus(30, 30)).unwrap();
        assert_eq!(big.check_axioms(0.0, 200, &mut rng), Ok(()));
    }

    #[test]
    fn normalization() {
        let s = FiniteMetricSpace::from_graph(catalog::cycle(100)).unwrap().normalized();
        assert_eq!(s.scale(), 50.0);
        assert_eq!(s.diameter(), 1.0);
        assert_eq!(s.dist(0, 25), 0.5);
    }

    #[test]
    fn point_metrics() {
        let c = PointMetric::Circle { circumference: 1.0 };
        assert!((c.eval(&[0.1], &[0.9]) - 0.2).abs() < 1e-12);
        assert!((PointMetric::L1Torus.eval(&[0.0, 0.0], &[0.5, 0.5]) - 1.0).abs() < 1e-12);
        assert_eq!(PointMetric::Euclidean.eval(&[0.0, 0.0], &[3.0, 4.0]), 5.0);
    }

    #[test]
    fn broken_triangle_is_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = FiniteMetricSpace::from_matrix(vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(s.check_axioms(0.0, 0, &mut rng), Err(AxiomViolation::Triangle(0, 1, 2)));
    }

    #[test]
    fn subspace_keeps_distances() {
        let s = FiniteMetricSpace::from_graph(catalog::cycle(10)).unwrap();
        let sub = s.subspace(&[0, 5, 7]);
        assert_eq!(sub.dist(0, 1), 5.0);
        assert_eq!(sub.dist(1, 2), 2.0);
        assert_eq!(sub.dist(2, 0), 3.0);
    }
}
