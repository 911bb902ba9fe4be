use super::GhError;
use crate::metric::FiniteMetricSpace;

/// Largest `|X| + |Y|` accepted by [`gh_bruteforce`].
pub const MAX_BRUTEFORCE_POINTS: usize = 14;

const TOL: f64 = 1e-12;

struct Csp {
    nx: usize,
    ny: usize,
    compat: Vec<u64>,
}

impl Csp {
    fn row(&self, x: usize) -> u64 {
        ((1u64 << self.ny) - 1) << (x * self.ny)
    }

    fn col(&self, y: usize) -> u64 {
        (0..self.nx).fold(0, |m, x| m | 1u64 << (x * self.ny + y))
    }

    /// Whether some pairwise compatible set of pairs covers every point.
    fn solve(&self, chosen: u64, allowed: u64) -> bool {
        let mut best: Option<u64> = None;
        for x in 0..self.nx {
            if chosen & self.row(x) == 0 {
                let opts = allowed & self.row(x);
                if best.is_none_or(|b| opts.count_ones() < b.count_ones()) {
                    best = Some(opts);
                }
            }
        }
        for y in 0..self.ny {
            if chosen & self.col(y) == 0 {
                let opts = allowed & self.col(y);
                if best.is_none_or(|b| opts.count_ones() < b.count_ones()) {
                    best = Some(opts);
                }
            }
        }
        let Some(mut opts) = best else { return true };
        while opts != 0 {
            let id = opts.trailing_zeros() as usize;
            opts &= opts - 1;
            if self.solve(chosen | 1 << id, allowed & self.compat[id]) {
                return true;
            }
        }
        false
    }
}

/// Exact Gromov-Hausdorff distance: half the least distortion of a
/// correspondence, found by binary search over the candidate distortions
/// with a backtracking search for a correspondence at each.
pub fn gh_bruteforce(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<f64, GhError> {
    let (nx, ny) = (x.len(), y.len());
    if nx == 0 || ny == 0 {
        return Err(GhError::Empty);
    }
    if nx + ny > MAX_BRUTEFORCE_POINTS {
        return Err(GhError::TooLarge { points: nx + ny, max: MAX_BRUTEFORCE_POINTS });
    }
    let (dx, dy) = (x.distance_matrix(), y.distance_matrix());
    let mut cands: Vec<f64> = vec![0.0];
    for a in 0..nx {
        for b in 0..nx {
            for c in 0..ny {
                for d in 0..ny {
                    cands.push((dx[a][b] - dy[c][d]).abs());
                }
            }
        }
    }
    cands.sort_by(f64::total_cmp);
    cands.dedup_by(|a, b| (*a - *b).abs() <= TOL);

    let feasible = |delta: f64| -> bool {
        let compat = (0..nx * ny)
            .map(|p| {
                let (a, c) = (p / ny, p % ny);
                (0..nx * ny).fold(0u64, |m, q| {
                    let (b, d) = (q / ny, q % ny);
                    if (dx[a][b] - dy[c][d]).abs() <= delta + TOL {
                        m | 1 << q
                    } else {
                        m
                    }
                })
            })
            .collect();
        Csp { nx, ny, compat }.solve(0, u64::MAX >> (64 - nx * ny))
    };
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(cands[lo] / 2.0)
}
