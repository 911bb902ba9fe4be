use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::cayley::CayleyAbels;
use super::hnf::hermite_normal_form;
use super::spec::{GenSet, GroupElement, GroupKind, GroupSpec};
use super::GroupError;

/// Word lengths of every element with respect to a generating set.
#[derive(Clone, Debug)]
pub struct WordLengths {
    pub elements: Vec<GroupElement>,
    pub index: HashMap<GroupElement, usize>,
    pub length: Vec<u32>,
}

impl WordLengths {
    pub fn of(&self, g: &GroupElement) -> Option<u32> {
        self.index.get(g).map(|&i| self.length[i])
    }
}

/// BFS over the group from the identity, right-multiplying by `gens`.
/// Stops expanding at `radius` when given.
pub fn word_lengths(
    spec: &GroupSpec,
    gens: &[GroupElement],
    radius: Option<u32>,
    budget: usize,
) -> Result<WordLengths, GroupError> {
    let id = spec.identity();
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut length = vec![0u32];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if radius.is_some_and(|r| length[i] >= r) {
            continue;
        }
        let g = elements[i].clone();
        for s in gens {
            let h = spec.multiply(&g, s);
            if !index.contains_key(&h) {
                if elements.len() >= budget {
                    return Err(GroupError::BudgetExceeded { budget });
                }
                index.insert(h.clone(), elements.len());
                length.push(length[i] + 1);
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
    }
    Ok(WordLengths { elements, index, length })
}

/// Normal closure of `seeds` under conjugation by `conjugators`.
pub fn normal_closure(
    spec: &GroupSpec,
    seeds: &[GroupElement],
    conjugators: &[GroupElement],
    budget: usize,
) -> Result<HashSet<GroupElement>, GroupError> {
    let mut gens: Vec<GroupElement> = seeds.to_vec();
    loop {
        let (members, _) = spec.closure(&gens, budget)?;
        let members: HashSet<GroupElement> = members.into_iter().collect();
        let mut grew = false;
        for t in gens.clone() {
            for x in conjugators {
                let c = spec.conjugate(&t, x);
                if !members.contains(&c) {
                    gens.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(members);
        }
    }
}

fn subgroup_commutator(
    spec: &GroupSpec,
    all: &[GroupElement],
    sub: &HashSet<GroupElement>,
    budget: usize,
) -> Result<HashSet<GroupElement>, GroupError> {
    let mut comms: HashSet<GroupElement> = HashSet::new();
    for x in all {
        for y in sub {
            comms.insert(spec.commutator(x, y));
        }
    }
    let gens: Vec<GroupElement> = comms.into_iter().collect();
    Ok(spec.closure(&gens, budget)?.0.into_iter().collect())
}

/// Orders of the lower central series `G = g_1 > g_2 > ...`, ending at the
/// first repeated term. The group is nilpotent iff the last entry is 1, and
/// then the step is `len - 1`.
pub fn lower_central_series(spec: &GroupSpec, budget: usize) -> Result<Vec<usize>, GroupError> {
    let all = spec.elements(budget)?;
    let mut term: HashSet<GroupElement> = all.iter().cloned().collect();
    let mut orders = vec![term.len()];
    loop {
        let next = subgroup_commutator(spec, &all, &term, budget)?;
        if next.len() == term.len() {
            return Ok(orders);
        }
        orders.push(next.len());
        if next.len() == 1 {
            return Ok(orders);
        }
        term = next;
    }
}

fn nilpotency_step(spec: &GroupSpec, budget: usize) -> Result<usize, GroupError> {
    let series = lower_central_series(spec, budget)?;
    if *series.last().expect("nonempty") != 1 {
        return Err(GroupError::NotNilpotent);
    }
    Ok(series.len() - 1)
}

#[derive(Clone, Debug)]
enum Projection {
    Identity,
    Heisenberg,
    Table(HashMap<GroupElement, GroupElement>),
}

/// The abelianization `G -> G/[G,G]` as an explicit abelian group.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub quotient: GroupSpec,
    /// Images of the input generators.
    pub gens: GenSet,
    pub derived_order: usize,
    projection: Projection,
}

impl Abelianization {
    pub fn project(&self, g: &GroupElement) -> GroupElement {
        match &self.projection {
            Projection::Identity => g.clone(),
            Projection::Heisenberg => match g {
                GroupElement::Unipotent { a, b, .. } => GroupElement::Residues(vec![*a, *b]),
                _ => panic!("not a Heisenberg element"),
            },
            Projection::Table(t) => t[g].clone(),
        }
    }
}

pub fn abelianize(spec: &GroupSpec, gens: &GenSet, budget: usize) -> Result<Abelianization, GroupError> {
    if spec.is_abelian() {
        return Ok(Abelianization {
            quotient: spec.clone(),
            gens: gens.clone(),
            derived_order: 1,
            projection: Projection::Identity,
        });
    }
    if let GroupKind::Heisenberg { modulus } = spec.kind() {
        let quotient = GroupSpec::cyclic_power(*modulus, 2)?;
        let projected = gens
            .elements()
            .iter()
            .map(|g| match g {
                GroupElement::Unipotent { a, b, .. } => GroupElement::Residues(vec![*a, *b]),
                _ => unreachable!("Heisenberg generators are unipotent"),
            })
            .collect();
        return Ok(Abelianization {
            gens: GenSet::symmetric(&quotient, projected)?,
            quotient,
            derived_order: *modulus as usize,
            projection: Projection::Heisenberg,
        });
    }

    let all = spec.elements(budget)?;
    let index: HashMap<GroupElement, usize> = all.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
    let comms: Vec<GroupElement> = gens
        .elements()
        .iter()
        .flat_map(|a| gens.elements().iter().map(move |b| (a, b)))
        .map(|(a, b)| spec.commutator(a, b))
        .collect();
    let derived = normal_closure(spec, &comms, gens.elements(), budget)?;

    let mut coset = vec![usize::MAX; all.len()];
    let mut count = 0;
    for (i, g) in all.iter().enumerate() {
        if coset[i] == usize::MAX {
            for d in &derived {
                coset[index[&spec.multiply(g, d)]] = count;
            }
            count += 1;
        }
    }

    // one representative of each {s, s^-1}
    let mut positive: Vec<GroupElement> = Vec::new();
    for s in gens.elements() {
        if !positive.iter().any(|p| *p == spec.inverse(s)) {
            positive.push(s.clone());
        }
    }
    let k = positive.len();
    let id_coset = coset[index[&spec.identity()]];
    let mut vec_of: Vec<Option<Vec<i64>>> = vec![None; count];
    let mut rep_of: Vec<Option<GroupElement>> = vec![None; count];
    vec_of[id_coset] = Some(vec![0; k]);
    rep_of[id_coset] = Some(spec.identity());
    let mut queue = VecDeque::from([id_coset]);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    while let Some(c) = queue.pop_front() {
        let rep = rep_of[c].clone().expect("visited");
        let v = vec_of[c].clone().expect("visited");
        for (i, s) in positive.iter().enumerate() {
            let next = coset[index[&spec.multiply(&rep, s)]];
            let mut w = v.clone();
            w[i] += 1;
            match &vec_of[next] {
                None => {
                    vec_of[next] = Some(w);
                    rep_of[next] = Some(spec.multiply(&rep, s));
                    queue.push_back(next);
                }
                Some(u) => relations.push(w.iter().zip(u).map(|(a, b)| a - b).collect()),
            }
        }
    }
    if vec_of.iter().any(Option::is_none) {
        return Err(GroupError::NotGenerating { reached: 0, order: all.len() as u64 });
    }
    let mut lattice = hermite_normal_form(&relations, k);
    if lattice.is_empty() {
        // only possible for the trivial quotient with no generators
        lattice = vec![vec![1; k.max(1)]];
    }
    let quotient = GroupSpec::abelian_quotient(lattice)?;
    let table: HashMap<GroupElement, GroupElement> = all
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let v = vec_of[coset[i]].clone().expect("visited");
            (g.clone(), quotient.canonical(GroupElement::Lattice(v)).expect("lattice vector"))
        })
        .collect();
    let projected = gens.elements().iter().map(|g| table[g].clone()).collect();
    Ok(Abelianization {
        gens: GenSet::symmetric(&quotient, projected)?,
        quotient,
        derived_order: derived.len(),
        projection: Projection::Table(table),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorWidthReport {
    pub derived_order: usize,
    pub commutator_count: usize,
    /// `covered[j-1]` = number of derived-subgroup elements that are
    /// products of at most `j` commutators.
    pub covered: Vec<usize>,
    /// Smallest `j <= l` with full coverage, if any.
    pub width: Option<usize>,
    pub holds: bool,
}

/// Checks that every element of `[G,G]` is a product of at most `l`
/// commutators, by brute force.
pub fn commutator_width_check(spec: &GroupSpec, l: usize, budget: usize) -> Result<CommutatorWidthReport, GroupError> {
    let all = spec.elements(budget)?;
    let mut comms: HashSet<GroupElement> = HashSet::new();
    for x in &all {
        for y in &all {
            comms.insert(spec.commutator(x, y));
        }
    }
    let comm_list: Vec<GroupElement> = comms.iter().cloned().collect();
    let derived: HashSet<GroupElement> = spec.closure(&comm_list, budget)?.0.into_iter().collect();
    let mut products: HashSet<GroupElement> = comms.clone();
    products.insert(spec.identity());
    let mut covered = vec![products.len()];
    for _ in 1..l {
        if products.len() == derived.len() {
            covered.push(products.len());
            continue;
        }
        let mut next = products.clone();
        for p in &products {
            for c in &comm_list {
                next.insert(spec.multiply(p, c));
            }
        }
        products = next;
        covered.push(products.len());
    }
    let width = covered.iter().position(|&c| c == derived.len()).map(|j| j + 1);
    Ok(CommutatorWidthReport {
        derived_order: derived.len(),
        commutator_count: comms.len(),
        holds: width.is_some(),
        covered,
        width,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalClosureReport {
    pub step: usize,
    pub radius: u64,
    pub closure_order: usize,
    pub conjugate_count: usize,
    pub bounded_order: usize,
    pub holds: bool,
}

/// Compares the normal closure of `h` with the subgroup generated by the
/// conjugates `x^-1 h x` for `x` of length at most `4^l` over `S u {h, h^-1}`.
pub fn normal_closure_bounded_check(
    spec: &GroupSpec,
    gens: &GenSet,
    h: &GroupElement,
    l: usize,
    budget: usize,
) -> Result<NormalClosureReport, GroupError> {
    if !spec.contains(h) {
        return Err(GroupError::ForeignElement(h.to_string()));
    }
    let step = nilpotency_step(spec, budget)?;
    if step > l {
        return Err(GroupError::StepExceeded { step, assumed: l });
    }
    let closure = normal_closure(spec, std::slice::from_ref(h), gens.elements(), budget)?;
    let radius = 4u64.saturating_pow(l as u32);
    let mut extended: Vec<GroupElement> = gens.elements().to_vec();
    extended.push(h.clone());
    extended.push(spec.inverse(h));
    let ball = word_lengths(spec, &extended, Some(radius.min(u32::MAX as u64) as u32), budget)?;
    let conjugates: HashSet<GroupElement> = ball.elements.iter().map(|x| spec.conjugate(h, x)).collect();
    let conj_list: Vec<GroupElement> = conjugates.iter().cloned().collect();
    let bounded: HashSet<GroupElement> = spec.closure(&conj_list, budget)?.0.into_iter().collect();
    Ok(NormalClosureReport {
        step,
        radius,
        closure_order: closure.len(),
        conjugate_count: conjugates.len(),
        bounded_order: bounded.len(),
        holds: bounded == closure,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    pub stabilizer_order: usize,
    pub degree: usize,
    pub rank: usize,
    pub step: usize,
    pub measured_step: usize,
    /// prime -> largest order of a p-power-order element of the stabilizer
    pub max_prime_power_orders: BTreeMap<u64, u64>,
    /// `4^(l+1) * ln d`, the log of the bound `d^(4^(l+1))`.
    pub log_bound: f64,
    pub holds: bool,
}

fn prime_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).expect("n >= 2 has a prime factor");
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// Sizes the stabilizer of a Cayley-Abels graph against `d^(4^(l+1))`.
/// `rank` is taken on trust and only echoed in the report.
pub fn stabilizer_bound_check(
    cab: &CayleyAbels,
    rank: usize,
    l: usize,
    budget: usize,
) -> Result<StabilizerReport, GroupError> {
    let spec = &cab.spec;
    let points = cab.graph.num_vertices();
    let kernel = cab
        .stabilizer
        .iter()
        .filter(|h| (0..points).all(|p| spec.act(h, p) == Some(p)))
        .count();
    if kernel > 1 {
        return Err(GroupError::NotFaithful { kernel });
    }
    let measured_step = nilpotency_step(spec, budget)?;
    let mut max_orders: BTreeMap<u64, u64> = BTreeMap::new();
    for h in &cab.stabilizer {
        let o = spec.element_order(h);
        if let Some(p) = prime_power(o) {
            let e = max_orders.entry(p).or_insert(1);
            *e = (*e).max(o);
        }
    }
    let degree = cab.graph.max_degree();
    let log_bound = 4f64.powi(l as i32 + 1) * (degree as f64).ln();
    let holds = max_orders.values().all(|&o| (o as f64).ln() <= log_bound + 1e-9);
    Ok(StabilizerReport {
        stabilizer_order: cab.stabilizer.len(),
        degree,
        rank,
        step: l,
        measured_step,
        max_prime_power_orders: max_orders,
        log_bound,
        holds,
    })
}
