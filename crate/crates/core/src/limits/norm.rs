use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::LimitError;

type Q = BigRational;

fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Inverse of a square rational matrix, or `None` if singular.
fn invert(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let m = a.len();
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x /= p.clone();
        }
        for r in 0..m {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..2 * m {
                    let v = aug[col][c].clone() * f.clone();
                    aug[r][c] -= v;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[m..].to_vec()).collect())
}

fn subsets(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, m, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug)]
struct Basis {
    /// `inv[i][j]`: coefficient of `x_j` in `t_i`, where `x = sum_i t_i u_{cols[i]}`.
    inv: Vec<Vec<Q>>,
    inv_f: Vec<Vec<f64>>,
}

/// Norm whose unit ball is the convex hull of `{+-u_1, .., +-u_k}`.
#[derive(Clone, Debug)]
pub struct PolyhedralNorm {
    dim: usize,
    gens: Vec<Vec<Q>>,
    bases: Vec<Basis>,
    facets: Vec<Vec<Q>>,
}

/// Facet description for export: the ball is `{x : a . x <= 1}` over all
/// `inequalities`, and the convex hull of `vertices`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormFacets {
    pub dimension: usize,
    pub vertices: Vec<Vec<String>>,
    pub inequalities: Vec<Vec<String>>,
}

impl PolyhedralNorm {
    pub fn new(gens: Vec<Vec<Q>>) -> Result<Self, LimitError> {
        let dim = gens.first().map_or(0, Vec::len);
        if dim == 0 || gens.iter().any(|g| g.len() != dim) {
            return Err(LimitError::InvalidNorm("generators must be nonempty vectors of one dimension".into()));
        }
        // one representative per {u, -u}, zero vectors dropped
        let mut reps: Vec<Vec<Q>> = Vec::new();
        for g in gens {
            let neg: Vec<Q> = g.iter().map(|x| -x.clone()).collect();
            if g.iter().any(|x| !x.is_zero()) && !reps.contains(&g) && !reps.contains(&neg) {
                reps.push(g);
            }
        }
        let bases: Vec<Basis> = subsets(reps.len(), dim)
            .into_iter()
            .filter_map(|cols| {
                // columns are the chosen generators
                let a: Vec<Vec<Q>> =
                    (0..dim).map(|r| cols.iter().map(|&c| reps[c][r].clone()).collect()).collect();
                let inv = invert(&a)?;
                let inv_f = inv.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
                Some(Basis { inv, inv_f })
            })
            .collect();
        if bases.is_empty() {
            return Err(LimitError::InvalidNorm("generators do not span".into()));
        }
        let mut norm = PolyhedralNorm { dim, gens: reps, bases, facets: Vec::new() };
        if dim <= 3 {
            norm.facets = norm.compute_facets();
        }
        Ok(norm)
    }

    pub fn from_integer(gens: &[Vec<i64>]) -> Result<Self, LimitError> {
        Self::new(gens.iter().map(|g| g.iter().map(|&x| q(x)).collect()).collect())
    }

    /// The `l1` norm on `R^m`.
    pub fn l1(m: usize) -> Self {
        let gens: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| (i == j) as i64).collect()).collect();
        Self::from_integer(&gens).expect("standard basis spans")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// One generator of each pair `{u, -u}`.
    pub fn generators(&self) -> &[Vec<Q>] {
        &self.gens
    }

    /// Exact gauge: `min sum |t_i|` over `sum t_i u_i = x`, attained on a
    /// basic solution.
    pub fn eval_exact(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.dim);
        self.bases
            .iter()
            .map(|b| {
                b.inv
                    .iter()
                    .map(|row| row.iter().zip(x).map(|(a, v)| a.clone() * v.clone()).sum::<Q>().abs())
                    .sum::<Q>()
            })
            .min()
            .expect("at least one basis")
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.bases
            .iter()
            .map(|b| b.inv_f.iter().map(|row| row.iter().zip(x).map(|(a, v)| a * v).sum::<f64>().abs()).sum::<f64>())
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest `l_inf` norm of a generator; `|x|_inf <= max_gen_inf * norm(x)`.
    pub fn max_gen_inf(&self) -> f64 {
        self.gens
            .iter()
            .flat_map(|g| g.iter().map(|x| x.abs().to_f64().unwrap_or(f64::INFINITY)))
            .fold(0.0, f64::max)
    }

    /// Functionals `f` with `f . (+-u_j) = 1` on a basis and `|f . u_i| <= 1`
    /// for every generator; the norm is their maximum.
    fn compute_facets(&self) -> Vec<Vec<Q>> {
        let m = self.dim;
        let mut out: Vec<Vec<Q>> = Vec::new();
        for b in &self.bases {
            for signs in 0..(1u32 << m) {
                let sigma: Vec<Q> = (0..m).map(|i| if signs >> i & 1 == 1 { q(-1) } else { q(1) }).collect();
                // f^T = sigma^T B^-1
                let f: Vec<Q> =
                    (0..m).map(|j| (0..m).map(|i| sigma[i].clone() * b.inv[i][j].clone()).sum()).collect();
                let valid = self.gens.iter().all(|u| {
                    let dot: Q = f.iter().zip(u).map(|(a, c)| a.clone() * c.clone()).sum();
                    dot.abs() <= Q::one()
                });
                if valid && !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out
    }

    /// Facet normals (empty above dimension 3).
    pub fn facets(&self) -> &[Vec<Q>] {
        &self.facets
    }

    /// Dual evaluation `max_f f . x`, for cross-checking.
    pub fn eval_dual(&self, x: &[Q]) -> Option<Q> {
        self.facets.iter().map(|f| f.iter().zip(x).map(|(a, v)| a.clone() * v.clone()).sum::<Q>()).max()
    }

    /// Generators `+-u` that are vertices of the unit ball.
    pub fn vertices(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for (i, u) in self.gens.iter().enumerate() {
            let others: Vec<Vec<Q>> =
                self.gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            let extreme = match PolyhedralNorm::new(others) {
                Ok(rest) => rest.eval_exact(u) > Q::one(),
                Err(_) => true,
            };
            if extreme && self.eval_exact(u) == Q::one() {
                out.push(u.clone());
                out.push(u.iter().map(|x| -x.clone()).collect());
            }
        }
        out
    }

    pub fn facet_description(&self) -> NormFacets {
        let fmt = |v: &Vec<Q>| v.iter().map(|x| x.to_string()).collect();
        NormFacets {
            dimension: self.dim,
            vertices: self.vertices().iter().map(fmt).collect(),
            inequalities: self.facets.iter().map(fmt).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qv(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| q(a)).collect()
    }

    fn hexagonal() -> PolyhedralNorm {
        PolyhedralNorm::from_integer(&[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn l1_values() {
        let n = PolyhedralNorm::l1(2);
        assert_eq!(n.eval_exact(&qv(&[1, 1])), q(2));
        assert_eq!(n.eval_exact(&qv(&[0, 0])), q(0));
        assert_eq!(n.eval(&[0.5, -0.25]), 0.75);
        assert_eq!(n.facets().len(), 4);
    }

    #[test]
    fn absolute_value() {
        let n = PolyhedralNorm::from_integer(&[vec![1]]).unwrap();
        assert_eq!(n.eval_exact(&qv(&[-7])), q(7));
        assert_eq!(n.facets().len(), 2);
    }

    #[test]
    fn hexagon() {
        let n = hexagonal();
        assert_eq!(n.eval_exact(&qv(&[1, 1])), q(1));
        assert_eq!(n.eval_exact(&qv(&[1, -1])), q(2));
        assert_eq!(n.facets().len(), 6);
        assert_eq!(n.vertices().len(), 6);
        assert_eq!(n.eval_dual(&qv(&[3, -2])), Some(n.eval_exact(&qv(&[3, -2]))));
    }

    #[test]
    fn redundant_generator_is_not_a_vertex() {
        let n = PolyhedralNorm::from_integer(&[vec![2, 0], vec![0, 2], vec![1, 1]]).unwrap();
        assert_eq!(n.vertices().len(), 4);
        assert_eq!(n.eval_exact(&qv(&[1, 1])), q(1));
    }

    #[test]
    fn degenerate_span_is_rejected() {
        assert!(PolyhedralNorm::from_integer(&[vec![1, 1], vec![2, 2]]).is_err());
    }

    #[test]
    fn facet_json() {
        let json = serde_json::to_value(PolyhedralNorm::l1(2).facet_description()).unwrap();
        assert_eq!(json["dimension"], 2);
        assert_eq!(json["vertices"].as_array().unwrap().len(), 4);
        assert!(json["inequalities"].as_array().unwrap().contains(&serde_json::json!(["1", "-1"])));
    }

    fn small_gens() -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 2..5)
            .prop_filter("spans the plane", |g| PolyhedralNorm::from_integer(g).is_ok())
    }

    proptest! {
        #[test]
        fn norm_axioms(g in small_gens(), x in prop::collection::vec(-9i64..=9, 2),
                       y in prop::collection::vec(-9i64..=9, 2), num in -5i64..=5, den in 1i64..=4) {
            let n = PolyhedralNorm::from_integer(&g).unwrap();
            let (x, y) = (qv(&x), qv(&y));
            let lambda = Q::new(BigInt::from(num), BigInt::from(den));
            let scaled: Vec<Q> = x.iter().map(|a| a.clone() * lambda.clone()).collect();
            prop_assert_eq!(n.eval_exact(&scaled), lambda.abs() * n.eval_exact(&x));
            let neg: Vec<Q> = x.iter().map(|a| -a.clone()).collect();
            prop_assert_eq!(n.eval_exact(&neg), n.eval_exact(&x));
            let sum: Vec<Q> = x.iter().zip(&y).map(|(a, b)| a.clone() + b.clone()).collect();
            prop_assert!(n.eval_exact(&sum) <= n.eval_exact(&x) + n.eval_exact(&y));
            prop_assert_eq!(n.eval_dual(&x), Some(n.eval_exact(&x)));
            let f = n.eval(&[x[0].to_f64().unwrap(), x[1].to_f64().unwrap()]);
            prop_assert!((f - n.eval_exact(&x).to_f64().unwrap()).abs() < 1e-9);
        }

        #[test]
        fn generators_lie_in_the_ball(g in small_gens()) {
            let n = PolyhedralNorm::from_integer(&g).unwrap();
            for u in n.generators() {
                prop_assert!(n.eval_exact(u) <= Q::one());
            }
            for v in n.vertices() {
                prop_assert_eq!(n.eval_exact(&v), Q::one());
            }
        }
    }
}
