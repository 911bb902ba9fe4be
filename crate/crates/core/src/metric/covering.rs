use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::Serialize;

use super::FiniteMetricSpace;

/// Bounds on the number of closed `eps`-balls needed to cover a space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoveringReport {
    pub eps: f64,
    /// Size of a greedy cover; at least the covering number.
    pub greedy_upper: usize,
    /// Size of a `2 eps`-separated set; at most the covering number.
    pub packing_lower: usize,
}

/// Centers of a greedy set cover by closed `eps`-balls, taking at each step
/// the ball covering the most uncovered points (ties to the smaller index).
pub fn greedy_cover(space: &FiniteMetricSpace, eps: f64) -> Vec<usize> {
    let n = space.len();
    if n == 0 {
        return Vec::new();
    }
    let balls: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let row = space.row(i);
            (0..n as u32).filter(|&j| row[j as usize] <= eps).collect()
        })
        .collect();
    let mut covered = vec![false; n];
    let mut left = n;
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> =
        balls.iter().enumerate().map(|(i, b)| (b.len(), Reverse(i))).collect();
    let mut centers = Vec::new();
    while left > 0 {
        let (gain, Reverse(i)) = heap.pop().expect("uncovered points remain");
        let fresh = balls[i].iter().filter(|&&j| !covered[j as usize]).count();
        if fresh < gain {
            heap.push((fresh, Reverse(i)));
            continue;
        }
        for &j in &balls[i] {
            if !covered[j as usize] {
                covered[j as usize] = true;
                left -= 1;
            }
        }
        centers.push(i);
    }
    centers
}

/// Greedy set in index order whose points are pairwise farther than `sep`.
pub fn separated_packing(space: &FiniteMetricSpace, sep: f64) -> Vec<usize> {
    let n = space.len();
    let mut nearest = vec![f64::INFINITY; n];
    let mut chosen = Vec::new();
    for i in 0..n {
        if nearest[i] > sep {
            chosen.push(i);
            for (m, d) in nearest.iter_mut().zip(space.row(i)) {
                *m = m.min(d);
            }
        }
    }
    chosen
}

/// Greedy covering size and `2 eps`-packing size, which sandwich the
/// covering number at scale `eps`.
pub fn covering_number(space: &FiniteMetricSpace, eps: f64) -> CoveringReport {
    assert!(eps > 0.0, "eps must be positive");
    CoveringReport {
        eps,
        greedy_upper: greedy_cover(space, eps).len(),
        packing_lower: separated_packing(space, 2.0 * eps).len(),
    }
}
