use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::Deserialize;

use super::{LimitError, PolyhedralNorm};

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn rational(&self) -> Result<BigRational, LimitError> {
        match self {
            Entry::Int(x) => Ok(BigRational::from_integer(BigInt::from(*x))),
            Entry::Text(s) => s.trim().parse().map_err(|_| LimitError::InvalidNorm(format!("not a rational: {s:?}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    generators: Vec<Vec<Entry>>,
    #[serde(default)]
    lattice: Option<Vec<Vec<Entry>>>,
}

fn rational_rows(rows: &[Vec<Entry>]) -> Result<Vec<Vec<BigRational>>, LimitError> {
    rows.iter().map(|r| r.iter().map(Entry::rational).collect()).collect()
}

/// Flat torus `R^m / L` with the metric induced by a polyhedral norm.
#[derive(Clone, Debug)]
pub struct TorusModel {
    dim: usize,
    lattice: Vec<Vec<BigRational>>,
    norm: PolyhedralNorm,
    rows: Vec<Vec<f64>>,
    /// `coeffs[i][j]`: coefficient of `x_j` in the `i`-th lattice coordinate of `x`.
    coeffs: Vec<Vec<f64>>,
    coeff_sum: f64,
    standard_l1: bool,
    diameter: f64,
}

const GRID: [usize; 4] = [0, 64, 16, 8];
/// Grid points refined by the diameter search.
const SEEDS: usize = 8;

impl TorusModel {
    /// Lattice given by its basis rows.
    pub fn new(lattice: Vec<Vec<BigRational>>, norm: PolyhedralNorm) -> Result<Self, LimitError> {
        let dim = norm.dim();
        if lattice.len() != dim || lattice.iter().any(|r| r.len() != dim) {
            return Err(LimitError::InvalidLattice(format!("expected {dim} rows of length {dim}")));
        }
        let to_f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        let rows: Vec<Vec<f64>> = lattice.iter().map(|r| r.iter().map(to_f).collect()).collect();
        // x = sum_i a_i l_i, so a = (L^T)^-1 x
        let lt: Vec<Vec<f64>> = (0..dim).map(|i| (0..dim).map(|j| rows[j][i]).collect()).collect();
        let coeffs = invert_f64(&lt).ok_or_else(|| LimitError::InvalidLattice("lattice is not full rank".into()))?;
        let coeff_sum = coeffs.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
        let identity = lattice
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == if i == j { BigRational::one() } else { BigRational::zero() }));
        let standard_l1 = identity && {
            let l1 = PolyhedralNorm::l1(dim);
            let mut a: Vec<_> = norm.facets().to_vec();
            let mut b: Vec<_> = l1.facets().to_vec();
            a.sort();
            b.sort();
            dim <= 3 && a == b
        };
        let mut model = TorusModel { dim, lattice, norm, rows, coeffs, coeff_sum, standard_l1, diameter: 0.0 };
        model.diameter = model.grid_diameter();
        Ok(model)
    }

    /// `R^m / Z^m` with the given norm.
    pub fn unit_lattice(norm: PolyhedralNorm) -> Self {
        let m = norm.dim();
        let lattice = (0..m)
            .map(|i| (0..m).map(|j| BigRational::from_integer(BigInt::from((i == j) as i64))).collect())
            .collect();
        Self::new(lattice, norm).expect("identity lattice is full rank")
    }

    /// `R^m / Z^m` with the `l1` norm.
    pub fn l1_torus(m: usize) -> Self {
        Self::unit_lattice(PolyhedralNorm::l1(m))
    }

    /// `R / Z` with the absolute value.
    pub fn circle() -> Self {
        Self::l1_torus(1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> &PolyhedralNorm {
        &self.norm
    }

    pub fn lattice(&self) -> &[Vec<BigRational>] {
        &self.lattice
    }

    pub fn is_unit_lattice(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == (i == j) as u8 as f64))
    }

    /// Whether this is `R^m / Z^m` with the `l1` norm.
    pub fn is_standard_l1(&self) -> bool {
        self.standard_l1
    }

    /// `min_l norm(x - y + l)` over lattice vectors `l`.
    pub fn distance(&self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        if self.standard_l1 {
            return x
                .iter()
                .zip(y)
                .map(|(a, b)| {
                    let t = (a - b).rem_euclid(1.0);
                    t.min(1.0 - t)
                })
                .sum();
        }
        let m = self.dim;
        let mut s: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        for i in 0..m {
            let a: f64 = self.coeffs[i].iter().zip(&s).map(|(c, v)| c * v).sum();
            let r = a.round();
            if r != 0.0 {
                for (sj, lj) in s.iter_mut().zip(&self.rows[i]) {
                    *sj -= r * lj;
                }
            }
        }
        // any better translate s + l has norm <= norm(s), hence
        // |l|_inf <= |s|_inf + max_gen_inf * norm(s)
        let ns = self.norm.eval(&s);
        let sup = s.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let k = ((sup + self.norm.max_gen_inf() * ns) * self.coeff_sum + 1e-9).floor() as i64;
        let mut best = ns;
        let mut a = vec![-k; m];
        let mut v = vec![0.0; m];
        loop {
            for (j, vj) in v.iter_mut().enumerate() {
                *vj = s[j] + (0..m).map(|i| a[i] as f64 * self.rows[i][j]).sum::<f64>();
            }
            best = best.min(self.norm.eval(&v));
            let mut i = 0;
            while i < m && a[i] == k {
                a[i] = -k;
                i += 1;
            }
            if i == m {
                break;
            }
            a[i] += 1;
        }
        best
    }

    /// Diameter: the largest distance from the origin over a grid on the
    /// fundamental domain and its half-lattice points.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Certified upper bound on the diameter: the grid maximum plus the
    /// grid mesh.
    pub fn diameter_upper(&self) -> f64 {
        let g = GRID[self.dim.min(3)] as f64;
        self.diameter + self.rows.iter().map(|r| self.norm.eval(r)).sum::<f64>() / (2.0 * g)
    }

    /// Grid maximum of the distance to the origin, refined by a pattern
    /// search from the best grid points.
    fn grid_diameter(&self) -> f64 {
        let m = self.dim;
        let g = GRID[m.min(3)];
        let origin = vec![0.0; m];
        let value = |t: &[f64]| self.distance(&self.point(t), &origin);
        let total = (g as u64).pow(m as u32);
        let mut seeds: Vec<(f64, Vec<f64>)> = Vec::new();
        let mut keep = |v: f64, t: Vec<f64>| {
            seeds.push((v, t));
            if seeds.len() > 4 * SEEDS {
                seeds.sort_by(|a, b| b.0.total_cmp(&a.0));
                seeds.truncate(SEEDS);
            }
        };
        for idx in 0..total {
            let mut rest = idx;
            let t: Vec<f64> = (0..m)
                .map(|_| {
                    let c = (rest % g as u64) as f64 / g as f64;
                    rest /= g as u64;
                    c
                })
                .collect();
            keep(value(&t), t);
        }
        for mask in 1u32..(1 << m) {
            let t: Vec<f64> = (0..m).map(|i| if mask >> i & 1 == 1 { 0.5 } else { 0.0 }).collect();
            keep(value(&t), t);
        }
        seeds.sort_by(|a, b| b.0.total_cmp(&a.0));
        seeds.truncate(SEEDS);
        let dirs: Vec<Vec<f64>> = (0..3u32.pow(m as u32))
            .map(|k| (0..m).map(|i| (k / 3u32.pow(i as u32) % 3) as f64 - 1.0).collect::<Vec<f64>>())
            .filter(|d| d.iter().any(|&x| x != 0.0))
            .collect();
        let mut best = 0.0f64;
        for (mut v, mut t) in seeds {
            let mut step = 1.0 / g as f64;
            while step > 1e-11 {
                let mut moved = false;
                for d in &dirs {
                    let cand: Vec<f64> = t.iter().zip(d).map(|(a, b)| a + step * b).collect();
                    let cv = value(&cand);
                    if cv > v + 1e-15 {
                        (v, t, moved) = (cv, cand, true);
                    }
                }
                if !moved {
                    step /= 2.0;
                }
            }
            best = best.max(v);
        }
        best
    }

    /// Point of the fundamental domain with lattice coordinates `t`.
    pub fn point(&self, t: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; self.dim];
        for (ti, row) in t.iter().zip(&self.rows) {
            for (pj, lj) in p.iter_mut().zip(row) {
                *pj += ti * lj;
            }
        }
        p
    }

    /// Checks symmetry, identity and the triangle inequality on random triples.
    pub fn check_axioms<R: Rng>(&self, samples: usize, tol: f64, rng: &mut R) -> bool {
        (0..samples).all(|_| {
            let mut draw = || self.point(&(0..self.dim).map(|_| rng.gen::<f64>()).collect::<Vec<_>>());
            let (x, y, z) = (draw(), draw(), draw());
            let (xy, yx, yz, xz) = (self.distance(&x, &y), self.distance(&y, &x), self.distance(&y, &z), self.distance(&x, &z));
            self.distance(&x, &x) <= tol && (xy - yx).abs() <= tol && xz <= xy + yz + tol
        })
    }
}

fn invert_f64(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let m = a.len();
    let mut aug: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..m).map(|j| (i == j) as u8 as f64));
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).max_by(|&x, &y| aug[x][col].abs().total_cmp(&aug[y][col].abs()))?;
        if aug[pivot][col].abs() < 1e-12 {
            return None;
        }
        aug.swap(col, pivot);
        let p = aug[col][col];
        aug[col].iter_mut().for_each(|x| *x /= p);
        for r in 0..m {
            if r != col {
                let f = aug[r][col];
                for c in 0..2 * m {
                    aug[r][c] -= f * aug[col][c];
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[m..].to_vec()).collect())
}

/// A limit model named on the command line.
#[derive(Clone, Debug)]
pub enum LimitModel {
    /// Unit-circumference circle.
    Circle,
    Torus(TorusModel),
}

impl LimitModel {
    pub fn torus(&self) -> TorusModel {
        match self {
            LimitModel::Circle => TorusModel::circle(),
            LimitModel::Torus(t) => t.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            LimitModel::Circle => 1,
            LimitModel::Torus(t) => t.dim(),
        }
    }
}

impl LimitModel {
    /// Reads `{"generators": [[..], ..], "lattice": [[..], ..]}`, entries
    /// being integers or rational strings such as `"1/2"`. Without a
    /// `lattice` the unit lattice is used.
    pub fn from_json(text: &str) -> Result<Self, LimitError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| LimitError::InvalidNorm(e.to_string()))?;
        let norm = PolyhedralNorm::new(rational_rows(&file.generators)?)?;
        let model = match file.lattice {
            Some(rows) => TorusModel::new(rational_rows(&rows)?, norm)?,
            None => TorusModel::unit_lattice(norm),
        };
        Ok(LimitModel::Torus(model))
    }
}

impl fmt::Display for LimitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitModel::Circle => f.write_str("circle"),
            LimitModel::Torus(t) if t.standard_l1 => write!(f, "l1-torus-{}", t.dim()),
            LimitModel::Torus(t) => write!(f, "torus-{}", t.dim()),
        }
    }
}

impl FromStr for LimitModel {
    type Err = LimitError;

    /// Parses `circle` or `l1-torus-<k>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "circle" {
            return Ok(LimitModel::Circle);
        }
        match s.strip_prefix("l1-torus-").and_then(|k| k.parse::<usize>().ok()) {
            Some(k @ 1..=3) => Ok(LimitModel::Torus(TorusModel::l1_torus(k))),
            _ => Err(LimitError::UnknownModel(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop, prop_assert, proptest};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn hexagonal() -> TorusModel {
        TorusModel::unit_lattice(PolyhedralNorm::from_integer(&[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap())
    }

    fn skewed() -> TorusModel {
        TorusModel::new(vec![vec![r(1), r(0)], vec![r(1), r(2)]], PolyhedralNorm::l1(2)).unwrap()
    }

    /// Oracle: minimum over an explicit `(2w+1)^m` window of integer translates.
    fn window_distance(t: &TorusModel, x: &[f64], y: &[f64], w: i64) -> f64 {
        let rows = &t.rows;
        let mut best = f64::INFINITY;
        for a in -w..=w {
            for b in -w..=w {
                let v: Vec<f64> = (0..2).map(|j| x[j] - y[j] + a as f64 * rows[0][j] + b as f64 * rows[1][j]).collect();
                best = best.min(t.norm().eval(&v));
            }
        }
        best
    }

    #[test]
    fn circle_wraps() {
        let c = TorusModel::circle();
        assert!((c.distance(&[0.1], &[0.9]) - 0.2).abs() < 1e-12);
        assert_eq!(c.distance(&[0.3], &[0.3]), 0.0);
        assert!((c.diameter() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn l1_torus_half_point() {
        let t = TorusModel::l1_torus(2);
        assert!((t.distance(&[0.0, 0.0], &[0.5, 0.5]) - 1.0).abs() < 1e-12);
        assert!((t.diameter() - 1.0).abs() < 1e-12);
        assert!((TorusModel::l1_torus(3).diameter() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn generic_path_agrees_with_window_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for t in [hexagonal(), skewed()] {
            for _ in 0..300 {
                let x = t.point(&[rng.gen(), rng.gen()]);
                let y = t.point(&[rng.gen(), rng.gen()]);
                assert!((t.distance(&x, &y) - window_distance(&t, &x, &y, 4)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn hexagonal_torus_diameter() {
        // farthest points from the origin are the thirds (1/3, 2/3) and (2/3, 1/3)
        let t = hexagonal();
        assert!((t.distance(&[0.0, 0.0], &[1.0 / 3.0, 2.0 / 3.0]) - 2.0 / 3.0).abs() < 1e-12);
        assert!((t.diameter() - 2.0 / 3.0).abs() < 1e-9, "{}", t.diameter());
        assert!(t.diameter_upper() >= 2.0 / 3.0);
    }

    #[test]
    fn axioms_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert!(hexagonal().check_axioms(500, 1e-9, &mut rng));
        assert!(skewed().check_axioms(500, 1e-9, &mut rng));
    }

    #[test]
    fn singular_lattice_is_rejected() {
        let bad = TorusModel::new(vec![vec![r(1), r(1)], vec![r(2), r(2)]], PolyhedralNorm::l1(2));
        assert!(matches!(bad, Err(LimitError::InvalidLattice(_))));
    }

    #[test]
    fn model_names() {
        assert!(matches!("circle".parse::<LimitModel>(), Ok(LimitModel::Circle)));
        assert_eq!("l1-torus-2".parse::<LimitModel>().unwrap().to_string(), "l1-torus-2");
        assert!("sphere".parse::<LimitModel>().is_err());
    }

    #[test]
    fn json_models() {
        let m = LimitModel::from_json(r#"{"generators": [[1, 0], [0, 1]]}"#).unwrap();
        assert_eq!(m.to_string(), "l1-torus-2");
        let hex = LimitModel::from_json(r#"{"generators": [[1, 0], [0, 1], ["1", "1"]], "lattice": [[1, 0], [0, 1]]}"#).unwrap();
        let t = hex.torus();
        assert!((t.distance(&[0.0, 0.0], &[1.0 / 3.0, 2.0 / 3.0]) - 2.0 / 3.0).abs() < 1e-9);
        let half = LimitModel::from_json(r#"{"generators": [["1/2", 0], [0, 1]]}"#).unwrap();
        assert!((half.torus().distance(&[0.0, 0.0], &[0.25, 0.0]) - 0.5).abs() < 1e-9);
        assert!(LimitModel::from_json(r#"{"generators": [["x", 0]]}"#).is_err());
        assert!(LimitModel::from_json(r#"{"norm": []}"#).is_err());
    }

    proptest! {
        #[test]
        fn lattice_translation_invariance(x in prop::array::uniform2(0.0f64..1.0), y in prop::array::uniform2(0.0f64..1.0),
                                          a in -3i64..=3, b in -3i64..=3) {
            for t in [hexagonal(), skewed()] {
                let (px, py) = (t.point(&x), t.point(&y));
                let shift = t.point(&[a as f64, b as f64]);
                let moved: Vec<f64> = px.iter().zip(&shift).map(|(p, s)| p + s).collect();
                let d = t.distance(&px, &py);
                prop_assert!((t.distance(&moved, &py) - d).abs() < 1e-9);
                prop_assert!((t.distance(&py, &moved) - d).abs() < 1e-9);
                prop_assert!((t.distance(&py, &px) - d).abs() < 1e-9);
                prop_assert!(d <= t.diameter_upper() + 1e-9);
            }
        }
    }
}
