use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use super::MetricError;
use crate::groups::{word_lengths, GenSet, GroupElement, GroupSpec};

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub generators: usize,
    /// `|V|`: nontrivial elements of the subgroup of `U`-length at most the index.
    pub v_size: usize,
    /// `|W|`: distinct conjugates of elements of `V`.
    pub w_size: usize,
    /// `2 |B| |U|^|B|`
    pub slack_bound: f64,
    pub max_slack: u32,
    /// `(a, |a|_{W,w}, |a|_U)` for every `a` in the subgroup.
    pub lengths: Vec<(String, u32, u32)>,
    pub holds: bool,
}

/// Compares the `U`-word length on a normal abelian finite-index subgroup
/// `A0 = <a0_gens>` with the weighted word length over the conjugates of
/// short subgroup elements.
pub fn weighted_word_length(
    spec: &GroupSpec,
    u: &GenSet,
    a0_gens: &[GroupElement],
    budget: usize,
) -> Result<SandwichReport, MetricError> {
    let all = spec.elements(budget)?;
    let (a0, a0_index) = spec.closure(a0_gens, budget)?;
    for x in &a0 {
        for y in &a0 {
            if spec.multiply(x, y) != spec.multiply(y, x) {
                return Err(MetricError::SubgroupNotAbelian);
            }
        }
    }
    for g in u.elements() {
        for a in a0_gens {
            if !a0_index.contains_key(&spec.conjugate(a, g)) {
                return Err(MetricError::NotNormal);
            }
        }
    }
    let index = all.len() / a0.len();
    let lengths = word_lengths(spec, u.elements(), None, budget)?;
    if lengths.elements.len() != all.len() {
        return Err(MetricError::InvalidInput("U does not generate the group".into()));
    }

    // V and the weighted conjugates W, keeping the least weight per element
    let v: Vec<&GroupElement> = a0
        .iter()
        .filter(|a| **a != spec.identity() && lengths.of(a).expect("generated") as usize <= index)
        .collect();
    let mut w: HashMap<usize, u32> = HashMap::new();
    for g in &all {
        for &x in &v {
            let c = a0_index[&spec.conjugate(x, g)];
            let weight = lengths.of(x).expect("generated");
            let e = w.entry(c).or_insert(weight);
            *e = (*e).min(weight);
        }
    }
    let w: Vec<(usize, u32)> = w.into_iter().collect();

    let mut dist = vec![u32::MAX; a0.len()];
    let mut heap = BinaryHeap::from([(Reverse(0u32), 0usize)]);
    dist[0] = 0;
    while let Some((Reverse(d), i)) = heap.pop() {
        if d > dist[i] {
            continue;
        }
        for &(c, weight) in &w {
            let j = a0_index[&spec.multiply(&a0[i], &a0[c])];
            if d + weight < dist[j] {
                dist[j] = d + weight;
                heap.push((Reverse(d + weight), j));
            }
        }
    }

    let slack_bound = 2.0 * index as f64 * (u.len() as f64).powi(index as i32);
    let mut max_slack = 0;
    let mut holds = true;
    let mut rows = Vec::with_capacity(a0.len());
    for (i, a) in a0.iter().enumerate() {
        let lu = lengths.of(a).expect("generated");
        let lw = dist[i];
        if lw > lu || (lu - lw) as f64 > slack_bound {
            holds = false;
        }
        max_slack = max_slack.max(lu.saturating_sub(lw));
        rows.push((a.to_string(), lw, lu));
    }
    Ok(SandwichReport {
        group_order: all.len(),
        subgroup_order: a0.len(),
        index,
        generators: u.len(),
        v_size: v.len(),
        w_size: w.len(),
        slack_bound,
        max_slack,
        lengths: rows,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_BUDGET;

    fn dihedral_case(n: i64) -> SandwichReport {
        let d = GroupSpec::dihedral(n).unwrap();
        let r = GroupElement::Dihedral { rot: 1, flip: false };
        let s = GroupElement::Dihedral { rot: 0, flip: true };
        let u = GenSet::symmetric(&d, vec![r.clone(), s]).unwrap();
        weighted_word_length(&d, &u, &[r], DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn dihedral_twenty() {
        let rep = dihedral_case(20);
        assert!(rep.holds);
        assert_eq!(rep.subgroup_order, 20);
        assert_eq!(rep.index, 2);
        assert_eq!(rep.slack_bound, 36.0);
    }

    #[test]
    fn dihedral_thirty_slack() {
        let rep = dihedral_case(30);
        assert!(rep.holds);
        assert!(rep.max_slack as f64 <= 36.0);
    }

    #[test]
    fn abelian_case_is_exact() {
        let z = GroupSpec::cyclic_power(7, 2).unwrap();
        let u = GenSet::standard(&z);
        let rep = weighted_word_length(&z, &u, &z.standard_generators(), DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.index, 1);
        assert_eq!(rep.max_slack, 0);
        assert!(rep.lengths.iter().all(|(_, lw, lu)| lw == lu));
    }

    #[test]
    fn non_normal_subgroup_is_rejected() {
        let d = GroupSpec::dihedral(5).unwrap();
        let s = GroupElement::Dihedral { rot: 0, flip: true };
        let u = GenSet::standard(&d);
        assert_eq!(weighted_word_length(&d, &u, &[s], DEFAULT_BUDGET).unwrap_err(), MetricError::NotNormal);
    }
}
