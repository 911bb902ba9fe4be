use std::collections::{HashMap, HashSet};

use super::MetricError;
use crate::groups::{GroupElement, GroupSpec};

/// Points of `Z^k` with `l1` norm exactly `s`.
fn sphere(k: usize, s: i64) -> Vec<Vec<i64>> {
    fn rec(k: usize, s: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 1 {
            prefix.push(s);
            out.push(prefix.clone());
            prefix.pop();
            if s != 0 {
                prefix.push(-s);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for a in 0..=s {
            for sign in if a == 0 { &[1][..] } else { &[1, -1][..] } {
                prefix.push(sign * a);
                rec(k - 1, s - a, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, s, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Largest `r` such that no nonzero `n` in `Z^k` with `sum |n_i| <= 2r`
/// satisfies `sum n_i e_i = 0`, where `e` lists one generator of each
/// inverse pair.
///
/// Balls of radius `s` are grown until two lattice points share an image;
/// the first such `s` is `r + 1`.
pub fn radius_of_freedom(spec: &GroupSpec, e: &[GroupElement]) -> Result<u32, MetricError> {
    if !spec.is_abelian() {
        return Err(MetricError::NotAbelian);
    }
    if e.is_empty() {
        return Err(MetricError::InvalidInput("no generators".into()));
    }
    for g in e {
        if !spec.contains(g) {
            return Err(MetricError::InvalidInput(format!("{g} is not in the group")));
        }
    }
    let k = e.len();
    let power = |i: usize, c: i64| {
        let p = spec.power(&e[i], c.unsigned_abs());
        if c < 0 {
            spec.inverse(&p)
        } else {
            p
        }
    };
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut cache: HashMap<(usize, i64), GroupElement> = HashMap::new();
    let mut s = 0i64;
    loop {
        for z in sphere(k, s) {
            let mut img = spec.identity();
            for (i, &c) in z.iter().enumerate() {
                if c != 0 {
                    let p = cache.entry((i, c)).or_insert_with(|| power(i, c));
                    img = spec.multiply(&img, p);
                }
            }
            if !seen.insert(img) {
                return Ok(s as u32 - 1);
            }
        }
        s += 1;
    }
}
