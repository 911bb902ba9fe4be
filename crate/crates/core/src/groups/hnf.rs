//! Hermite normal form over the integers, row style.

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the nonzero rows in echelon form: each pivot is positive and the
/// entries above a pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged lattice basis");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if pivot_row == m.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below pivot_row
            let best = (pivot_row..m.len())
                .filter(|&r| m[r][c] != 0)
                .min_by_key(|&r| m[r][c].abs());
            let Some(best) = best else { break };
            m.swap(pivot_row, best);
            let p = m[pivot_row][c];
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                if m[r][c] != 0 {
                    let q = m[r][c].div_euclid(p);
                    let pr = m[pivot_row].clone();
                    for (x, y) in m[r].iter_mut().zip(&pr) {
                        *x -= q * y;
                    }
                    if m[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][c] == 0 {
            continue;
        }
        if m[pivot_row][c] < 0 {
            for x in m[pivot_row].iter_mut() {
                *x = -*x;
            }
        }
        let p = m[pivot_row][c];
        let pr = m[pivot_row].clone();
        for r in 0..pivot_row {
            let q = m[r][c].div_euclid(p);
            if q != 0 {
                for (x, y) in m[r].iter_mut().zip(&pr) {
                    *x -= q * y;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("HNF entry overflows i64"))
                .collect()
        })
        .collect()
}

/// Reduces `v` modulo a square, full-rank HNF basis so that coordinate `i`
/// lands in `[0, hnf[i][i])`.
pub fn reduce_mod_hnf(hnf: &[Vec<i64>], v: &mut [i64]) {
    for (i, row) in hnf.iter().enumerate() {
        let q = v[i].div_euclid(row[i]);
        if q != 0 {
            for (x, y) in v.iter_mut().zip(row) {
                *x -= q * y;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_fixed() {
        let h = hermite_normal_form(&[vec![3, 0], vec![0, 5]], 2);
        assert_eq!(h, vec![vec![3, 0], vec![0, 5]]);
    }

    #[test]
    fn determinant_is_preserved() {
        let h = hermite_normal_form(&[vec![2, 1], vec![1, 3]], 2);
        assert_eq!(h[0][0] * h[1][1], 5);
        assert!(h[0][1] >= 0 && h[0][1] < h[1][1]);
    }

    #[test]
    fn redundant_rows_collapse() {
        let h = hermite_normal_form(&[vec![4], vec![6], vec![10]], 1);
        assert_eq!(h, vec![vec![2]]);
    }

    #[test]
    fn reduction_lands_in_box() {
        let h = hermite_normal_form(&[vec![2, 1], vec![1, 3]], 2);
        let mut v = vec![-7, 11];
        reduce_mod_hnf(&h, &mut v);
        assert!(v[0] >= 0 && v[0] < h[0][0]);
        assert!(v[1] >= 0 && v[1] < h[1][1]);
    }
}
