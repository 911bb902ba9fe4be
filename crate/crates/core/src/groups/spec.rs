use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::hnf::{hermite_normal_form, reduce_mod_hnf};
use super::GroupError;

/// Default ceiling on the number of group elements any enumeration may visit.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Canonical, hashable encoding of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Residue tuple in `[0, n)^k`.
    Residues(Vec<i64>),
    /// Lattice-reduced vector in `Z^m / L`.
    Lattice(Vec<i64>),
    /// Upper unipotent matrix `[[1,a,c],[0,1,b],[0,0,1]]` mod n.
    Unipotent { a: i64, b: i64, c: i64 },
    /// The map `x -> (-1)^flip * x + rot` on `Z/n`.
    Dihedral { rot: i64, flip: bool },
    /// Image table of a permutation.
    Perm(Vec<u32>),
}

fn join(v: impl IntoIterator<Item = impl fmt::Display>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Residues(v) => write!(f, "z:{}", join(v)),
            GroupElement::Lattice(v) => write!(f, "v:{}", join(v)),
            GroupElement::Unipotent { a, b, c } => write!(f, "h:{a},{b},{c}"),
            GroupElement::Dihedral { rot, flip } => write!(f, "d:{rot},{}", u8::from(*flip)),
            GroupElement::Perm(p) => write!(f, "p:{}", join(p)),
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct ParseElementError;

impl fmt::Display for ParseElementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("not a group element literal")
    }
}

impl std::error::Error for ParseElementError {}

impl FromStr for GroupElement {
    type Err = ParseElementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (tag, body) = s.split_once(':').ok_or(ParseElementError)?;
        let ints = || -> Result<Vec<i64>, ParseElementError> {
            if body.is_empty() {
                return Ok(Vec::new());
            }
            body.split(',').map(|x| x.trim().parse().map_err(|_| ParseElementError)).collect()
        };
        match tag {
            "z" => Ok(GroupElement::Residues(ints()?)),
            "v" => Ok(GroupElement::Lattice(ints()?)),
            "h" => match ints()?.as_slice() {
                &[a, b, c] => Ok(GroupElement::Unipotent { a, b, c }),
                _ => Err(ParseElementError),
            },
            "d" => match ints()?.as_slice() {
                &[rot, f @ (0 | 1)] => Ok(GroupElement::Dihedral { rot, flip: f == 1 }),
                _ => Err(ParseElementError),
            },
            "p" => ints()?
                .into_iter()
                .map(|x| u32::try_from(x).map_err(|_| ParseElementError))
                .collect::<Result<_, _>>()
                .map(GroupElement::Perm),
            _ => Err(ParseElementError),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    CyclicPower { modulus: i64, rank: usize },
    AbelianQuotient { basis: Vec<Vec<i64>> },
    Heisenberg { modulus: i64 },
    Dihedral { n: i64 },
    Permutation { degree: usize, generators: Vec<Vec<u32>> },
}

/// A finite group with exact arithmetic on canonical element encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    /// Square HNF of the relation lattice, for `AbelianQuotient`.
    hnf: Option<Vec<Vec<i64>>>,
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| {
        let x = x as usize;
        x < p.len() && !std::mem::replace(&mut seen[x], true)
    })
}

impl GroupSpec {
    /// `(Z/nZ)^k`.
    pub fn cyclic_power(modulus: i64, rank: usize) -> Result<Self, GroupError> {
        if modulus < 2 {
            return Err(GroupError::InvalidSpec(format!("modulus {modulus} < 2")));
        }
        if rank == 0 {
            return Err(GroupError::InvalidSpec("rank must be positive".into()));
        }
        Ok(GroupSpec { kind: GroupKind::CyclicPower { modulus, rank }, hnf: None })
    }

    /// `Z^m / L` where `L` is spanned by the rows of `basis`.
    pub fn abelian_quotient(basis: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        let m = basis.len();
        if m == 0 || basis.iter().any(|r| r.len() != m) {
            return Err(GroupError::InvalidSpec("lattice basis must be square".into()));
        }
        let hnf = hermite_normal_form(&basis, m);
        if hnf.len() != m {
            return Err(GroupError::InvalidSpec("lattice basis is singular".into()));
        }
        Ok(GroupSpec { kind: GroupKind::AbelianQuotient { basis }, hnf: Some(hnf) })
    }

    /// Heisenberg group of 3x3 upper unipotent matrices over `Z/nZ`.
    pub fn heisenberg(modulus: i64) -> Result<Self, GroupError> {
        if modulus < 2 {
            return Err(GroupError::InvalidSpec(format!("modulus {modulus} < 2")));
        }
        Ok(GroupSpec { kind: GroupKind::Heisenberg { modulus }, hnf: None })
    }

    /// Dihedral group of order `2n`, acting on `Z/n`.
    pub fn dihedral(n: i64) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::InvalidSpec(format!("dihedral parameter {n} < 2")));
        }
        Ok(GroupSpec { kind: GroupKind::Dihedral { n }, hnf: None })
    }

    /// Group generated by permutations of `{0, .., degree-1}`.
    pub fn permutation(degree: usize, generators: Vec<Vec<u32>>) -> Result<Self, GroupError> {
        if degree < 2 {
            return Err(GroupError::InvalidSpec("degree must be at least 2".into()));
        }
        if generators.iter().any(|g| g.len() != degree || !is_permutation(g)) {
            return Err(GroupError::InvalidSpec("generator is not a permutation of the domain".into()));
        }
        Ok(GroupSpec { kind: GroupKind::Permutation { degree, generators }, hnf: None })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::CyclicPower { rank, .. } => GroupElement::Residues(vec![0; *rank]),
            GroupKind::AbelianQuotient { basis } => GroupElement::Lattice(vec![0; basis.len()]),
            GroupKind::Heisenberg { .. } => GroupElement::Unipotent { a: 0, b: 0, c: 0 },
            GroupKind::Dihedral { .. } => GroupElement::Dihedral { rot: 0, flip: false },
            GroupKind::Permutation { degree, .. } => {
                GroupElement::Perm((0..*degree as u32).collect())
            }
        }
    }

    /// True when `g` is a canonical encoding of an element of this group.
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (&self.kind, g) {
            (GroupKind::CyclicPower { modulus, rank }, GroupElement::Residues(v)) => {
                v.len() == *rank && v.iter().all(|x| (0..*modulus).contains(x))
            }
            (GroupKind::AbelianQuotient { basis }, GroupElement::Lattice(v)) => {
                let hnf = self.hnf.as_ref().expect("abelian quotient carries HNF");
                v.len() == basis.len() && v.iter().zip(hnf).enumerate().all(|(i, (x, row))| (0..row[i]).contains(x))
            }
            (GroupKind::Heisenberg { modulus }, GroupElement::Unipotent { a, b, c }) => {
                [a, b, c].iter().all(|x| (0..*modulus).contains(*x))
            }
            (GroupKind::Dihedral { n }, GroupElement::Dihedral { rot, .. }) => (0..*n).contains(rot),
            (GroupKind::Permutation { degree, .. }, GroupElement::Perm(p)) => {
                p.len() == *degree && is_permutation(p)
            }
            _ => false,
        }
    }

    /// Canonicalizes a raw encoding (residues, lattice vector, ...).
    pub fn canonical(&self, g: GroupElement) -> Result<GroupElement, GroupError> {
        let out = match (&self.kind, g) {
            (GroupKind::CyclicPower { modulus, rank }, GroupElement::Residues(v)) if v.len() == *rank => {
                GroupElement::Residues(v.into_iter().map(|x| x.rem_euclid(*modulus)).collect())
            }
            (GroupKind::AbelianQuotient { basis }, GroupElement::Lattice(mut v)) if v.len() == basis.len() => {
                reduce_mod_hnf(self.hnf.as_ref().expect("abelian quotient carries HNF"), &mut v);
                GroupElement::Lattice(v)
            }
            (GroupKind::Heisenberg { modulus }, GroupElement::Unipotent { a, b, c }) => GroupElement::Unipotent {
                a: a.rem_euclid(*modulus),
                b: b.rem_euclid(*modulus),
                c: c.rem_euclid(*modulus),
            },
            (GroupKind::Dihedral { n }, GroupElement::Dihedral { rot, flip }) => {
                GroupElement::Dihedral { rot: rot.rem_euclid(*n), flip }
            }
            (GroupKind::Permutation { .. }, g @ GroupElement::Perm(_)) if self.contains(&g) => g,
            (_, g) => return Err(GroupError::ForeignElement(g.to_string())),
        };
        Ok(out)
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match (&self.kind, x, y) {
            (GroupKind::CyclicPower { modulus, .. }, GroupElement::Residues(a), GroupElement::Residues(b)) => {
                GroupElement::Residues(a.iter().zip(b).map(|(p, q)| (p + q) % modulus).collect())
            }
            (GroupKind::AbelianQuotient { .. }, GroupElement::Lattice(a), GroupElement::Lattice(b)) => {
                let mut v: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                reduce_mod_hnf(self.hnf.as_ref().expect("abelian quotient carries HNF"), &mut v);
                GroupElement::Lattice(v)
            }
            (
                GroupKind::Heisenberg { modulus: n },
                GroupElement::Unipotent { a, b, c },
                GroupElement::Unipotent { a: a2, b: b2, c: c2 },
            ) => GroupElement::Unipotent {
                a: (a + a2) % n,
                b: (b + b2) % n,
                c: (c + c2 + a * b2).rem_euclid(*n),
            },
            (
                GroupKind::Dihedral { n },
                GroupElement::Dihedral { rot, flip },
                GroupElement::Dihedral { rot: r2, flip: f2 },
            ) => {
                let moved = if *flip { -r2 } else { *r2 };
                GroupElement::Dihedral { rot: (rot + moved).rem_euclid(*n), flip: flip ^ f2 }
            }
            // (x * y)(i) = x(y(i)): y acts first
            (GroupKind::Permutation { .. }, GroupElement::Perm(p), GroupElement::Perm(q)) => {
                GroupElement::Perm(q.iter().map(|&i| p[i as usize]).collect())
            }
            _ => panic!("element does not belong to {:?}", self.kind),
        }
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        match (&self.kind, x) {
            (GroupKind::CyclicPower { modulus, .. }, GroupElement::Residues(a)) => {
                GroupElement::Residues(a.iter().map(|p| (modulus - p) % modulus).collect())
            }
            (GroupKind::AbelianQuotient { .. }, GroupElement::Lattice(a)) => {
                let mut v: Vec<i64> = a.iter().map(|p| -p).collect();
                reduce_mod_hnf(self.hnf.as_ref().expect("abelian quotient carries HNF"), &mut v);
                GroupElement::Lattice(v)
            }
            (GroupKind::Heisenberg { modulus: n }, GroupElement::Unipotent { a, b, c }) => GroupElement::Unipotent {
                a: (n - a) % n,
                b: (n - b) % n,
                c: (a * b - c).rem_euclid(*n),
            },
            (GroupKind::Dihedral { n }, GroupElement::Dihedral { rot, flip }) => {
                let r = if *flip { *rot } else { (n - rot) % n };
                GroupElement::Dihedral { rot: r, flip: *flip }
            }
            (GroupKind::Permutation { .. }, GroupElement::Perm(p)) => {
                let mut inv = vec![0u32; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                GroupElement::Perm(inv)
            }
            _ => panic!("element does not belong to {:?}", self.kind),
        }
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let xy = self.multiply(x, y);
        let xyx1 = self.multiply(&xy, &self.inverse(x));
        self.multiply(&xyx1, &self.inverse(y))
    }

    /// `x^-1 h x`.
    pub fn conjugate(&self, h: &GroupElement, x: &GroupElement) -> GroupElement {
        self.multiply(&self.multiply(&self.inverse(x), h), x)
    }

    pub fn power(&self, x: &GroupElement, k: u64) -> GroupElement {
        let mut acc = self.identity();
        let mut base = x.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: &GroupElement) -> u64 {
        let id = self.identity();
        let mut y = x.clone();
        let mut k = 1;
        while y != id {
            y = self.multiply(&y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            GroupKind::CyclicPower { .. } | GroupKind::AbelianQuotient { .. } => true,
            GroupKind::Heisenberg { .. } => false,
            GroupKind::Dihedral { n } => *n <= 2,
            GroupKind::Permutation { generators, .. } => {
                let gens: Vec<GroupElement> = generators.iter().cloned().map(GroupElement::Perm).collect();
                gens.iter().all(|a| gens.iter().all(|b| self.multiply(a, b) == self.multiply(b, a)))
            }
        }
    }

    /// Exact group order; permutation groups are enumerated within `budget`.
    pub fn order(&self, budget: usize) -> Result<u64, GroupError> {
        Ok(match &self.kind {
            GroupKind::CyclicPower { modulus, rank } => (*modulus as u64).pow(*rank as u32),
            GroupKind::AbelianQuotient { .. } => {
                let hnf = self.hnf.as_ref().expect("abelian quotient carries HNF");
                hnf.iter().enumerate().map(|(i, r)| r[i] as u64).product()
            }
            GroupKind::Heisenberg { modulus } => (*modulus as u64).pow(3),
            GroupKind::Dihedral { n } => 2 * *n as u64,
            GroupKind::Permutation { .. } => self.elements(budget)?.len() as u64,
        })
    }

    /// All elements in a deterministic order, identity first.
    pub fn elements(&self, budget: usize) -> Result<Vec<GroupElement>, GroupError> {
        let over = |count: u64| -> Result<(), GroupError> {
            if count > budget as u64 {
                Err(GroupError::BudgetExceeded { budget })
            } else {
                Ok(())
            }
        };
        match &self.kind {
            GroupKind::CyclicPower { modulus, rank } => {
                over((*modulus as u64).saturating_pow(*rank as u32))?;
                Ok(box_points(&vec![*modulus; *rank]).into_iter().map(GroupElement::Residues).collect())
            }
            GroupKind::AbelianQuotient { .. } => {
                over(self.order(budget)?)?;
                let hnf = self.hnf.as_ref().expect("abelian quotient carries HNF");
                let dims: Vec<i64> = hnf.iter().enumerate().map(|(i, r)| r[i]).collect();
                Ok(box_points(&dims).into_iter().map(GroupElement::Lattice).collect())
            }
            GroupKind::Heisenberg { modulus } => {
                over((*modulus as u64).saturating_pow(3))?;
                Ok(box_points(&[*modulus; 3])
                    .into_iter()
                    .map(|v| GroupElement::Unipotent { a: v[0], b: v[1], c: v[2] })
                    .collect())
            }
            GroupKind::Dihedral { n } => {
                over(2 * *n as u64)?;
                Ok([false, true]
                    .into_iter()
                    .flat_map(|flip| (0..*n).map(move |rot| GroupElement::Dihedral { rot, flip }))
                    .collect())
            }
            GroupKind::Permutation { generators, .. } => {
                let gens: Vec<GroupElement> = generators.iter().cloned().map(GroupElement::Perm).collect();
                Ok(self.closure(&gens, budget)?.0)
            }
        }
    }

    /// Subgroup generated by `gens`, in BFS order from the identity, with
    /// its index map.
    pub fn closure(
        &self,
        gens: &[GroupElement],
        budget: usize,
    ) -> Result<(Vec<GroupElement>, HashMap<GroupElement, usize>), GroupError> {
        let id = self.identity();
        let mut order = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let g = order[i].clone();
            for s in gens {
                let h = self.multiply(&g, s);
                if !index.contains_key(&h) {
                    if order.len() >= budget {
                        return Err(GroupError::BudgetExceeded { budget });
                    }
                    index.insert(h.clone(), order.len());
                    queue.push_back(order.len());
                    order.push(h);
                }
            }
        }
        Ok((order, index))
    }

    /// Size of the natural action domain, when this group acts on points.
    pub fn action_degree(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::Dihedral { n } => Some(*n as usize),
            GroupKind::Permutation { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    /// Image of `point` under `g` in the natural action.
    pub fn act(&self, g: &GroupElement, point: usize) -> Option<usize> {
        match (&self.kind, g) {
            (GroupKind::Dihedral { n }, GroupElement::Dihedral { rot, flip }) => {
                let x = point as i64;
                let y = if *flip { -x } else { x };
                Some((y + rot).rem_euclid(*n) as usize)
            }
            (GroupKind::Permutation { .. }, GroupElement::Perm(p)) => p.get(point).map(|&x| x as usize),
            _ => None,
        }
    }

    /// The named generators: `e_i` for abelian kinds, the elementary
    /// unipotents for Heisenberg, `r, s` for dihedral, the given
    /// permutations otherwise. Inverses are not included.
    pub fn standard_generators(&self) -> Vec<GroupElement> {
        match &self.kind {
            GroupKind::CyclicPower { rank, .. } => (0..*rank)
                .map(|i| {
                    let mut v = vec![0; *rank];
                    v[i] = 1;
                    GroupElement::Residues(v)
                })
                .collect(),
            GroupKind::AbelianQuotient { basis } => (0..basis.len())
                .map(|i| {
                    let mut v = vec![0; basis.len()];
                    v[i] = 1;
                    self.canonical(GroupElement::Lattice(v)).expect("unit vector is in Z^m")
                })
                .collect(),
            GroupKind::Heisenberg { .. } => vec![
                GroupElement::Unipotent { a: 1, b: 0, c: 0 },
                GroupElement::Unipotent { a: 0, b: 1, c: 0 },
                GroupElement::Unipotent { a: 0, b: 0, c: 1 },
            ],
            GroupKind::Dihedral { .. } => vec![
                GroupElement::Dihedral { rot: 1, flip: false },
                GroupElement::Dihedral { rot: 0, flip: true },
            ],
            GroupKind::Permutation { generators, .. } => {
                generators.iter().cloned().map(GroupElement::Perm).collect()
            }
        }
    }
}

/// All integer points of the box `[0, d_0) x .. x [0, d_k)`, last coordinate
/// fastest.
fn box_points(dims: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Symmetric generating set with optional positive weights.
#[derive(Clone, Debug, PartialEq)]
pub struct GenSet {
    elements: Vec<GroupElement>,
    weights: Option<Vec<f64>>,
    added_inverses: usize,
}

impl GenSet {
    /// Canonicalizes `gens`, removes duplicates and adds missing inverses.
    pub fn symmetric(spec: &GroupSpec, gens: Vec<GroupElement>) -> Result<Self, GroupError> {
        let mut elements: Vec<GroupElement> = Vec::new();
        let mut seen = HashSet::new();
        for g in gens {
            let g = spec.canonical(g)?;
            if seen.insert(g.clone()) {
                elements.push(g);
            }
        }
        let mut added_inverses = 0;
        for i in 0..elements.len() {
            let inv = spec.inverse(&elements[i]);
            if seen.insert(inv.clone()) {
                elements.push(inv);
                added_inverses += 1;
            }
        }
        Ok(GenSet { elements, weights: None, added_inverses })
    }

    /// The standard generators of `spec` and their inverses.
    pub fn standard(spec: &GroupSpec) -> Self {
        Self::symmetric(spec, spec.standard_generators()).expect("standard generators are canonical")
    }

    /// Attaches one positive weight per element (after symmetrization).
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self, GroupError> {
        if weights.len() != self.elements.len() || weights.iter().any(|w| !(*w > 0.0)) {
            return Err(GroupError::InvalidSpec("weights must be positive, one per generator".into()));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of inverses that had to be added to make the set symmetric.
    pub fn added_inverses(&self) -> usize {
        self.added_inverses
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(spec: &GroupSpec) {
        let els = spec.elements(DEFAULT_BUDGET).unwrap();
        let id = spec.identity();
        assert_eq!(els[0], id);
        let set: HashSet<_> = els.iter().cloned().collect();
        assert_eq!(set.len(), els.len(), "canonical forms are unique");
        for x in &els {
            assert!(spec.contains(x));
            assert_eq!(spec.multiply(x, &id), *x);
            assert_eq!(spec.multiply(&id, x), *x);
            assert_eq!(spec.multiply(x, &spec.inverse(x)), id);
            for y in &els {
                assert!(set.contains(&spec.multiply(x, y)), "closure");
            }
        }
        // associativity on a stride of triples keeps this exhaustive for
        // small groups and cheap for the larger ones
        let stride = (els.len() / 40).max(1);
        for x in els.iter().step_by(stride) {
            for y in &els {
                for z in els.iter().step_by(stride) {
                    assert_eq!(
                        spec.multiply(&spec.multiply(x, y), z),
                        spec.multiply(x, &spec.multiply(y, z))
                    );
                }
            }
        }
    }

    #[test]
    fn axioms_on_every_variant() {
        check_axioms(&GroupSpec::cyclic_power(5, 2).unwrap());
        check_axioms(&GroupSpec::abelian_quotient(vec![vec![2, 1], vec![1, 3]]).unwrap());
        check_axioms(&GroupSpec::abelian_quotient(vec![vec![4, 0, 2], vec![0, 3, 0], vec![1, 1, 5]]).unwrap());
        check_axioms(&GroupSpec::heisenberg(5).unwrap());
        check_axioms(&GroupSpec::dihedral(7).unwrap());
        check_axioms(&GroupSpec::permutation(4, vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).unwrap());
    }

    #[test]
    fn orders() {
        assert_eq!(GroupSpec::cyclic_power(3, 4).unwrap().order(100).unwrap(), 81);
        let q = GroupSpec::abelian_quotient(vec![vec![4, 0, 2], vec![0, 3, 0], vec![1, 1, 5]]).unwrap();
        assert_eq!(q.order(1000).unwrap(), 54); // |det| = 4*15 - 0 + 2*(0-3) = 54
        assert_eq!(q.elements(1000).unwrap().len(), 54);
        assert_eq!(GroupSpec::heisenberg(6).unwrap().order(1000).unwrap(), 216);
        let s4 = GroupSpec::permutation(4, vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).unwrap();
        assert_eq!(s4.order(1000).unwrap(), 24);
        assert!(matches!(s4.order(10), Err(GroupError::BudgetExceeded { budget: 10 })));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(GroupSpec::cyclic_power(1, 2).is_err());
        assert!(GroupSpec::abelian_quotient(vec![vec![1, 2], vec![2, 4]]).is_err());
        assert!(GroupSpec::permutation(3, vec![vec![0, 0, 1]]).is_err());
        assert!(GroupSpec::heisenberg(0).is_err());
    }

    #[test]
    fn heisenberg_product_rule() {
        let h = GroupSpec::heisenberg(7).unwrap();
        let x = GroupElement::Unipotent { a: 1, b: 0, c: 0 };
        let y = GroupElement::Unipotent { a: 0, b: 1, c: 0 };
        assert_eq!(h.commutator(&x, &y), GroupElement::Unipotent { a: 0, b: 0, c: 1 });
        assert_eq!(h.multiply(&x, &y), GroupElement::Unipotent { a: 1, b: 1, c: 1 });
        assert_eq!(h.multiply(&y, &x), GroupElement::Unipotent { a: 1, b: 1, c: 0 });
    }

    #[test]
    fn symmetrization_adds_inverses() {
        let z = GroupSpec::cyclic_power(10, 1).unwrap();
        let s = GenSet::symmetric(&z, vec![GroupElement::Residues(vec![1]), GroupElement::Residues(vec![13])]).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.added_inverses(), 2);
        assert!(s.elements().contains(&GroupElement::Residues(vec![7])));
    }

    #[test]
    fn element_literals_round_trip() {
        for s in ["z:1,2", "v:0,3", "h:1,2,3", "d:4,1", "p:2,0,1"] {
            let g: GroupElement = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("q:1".parse::<GroupElement>().is_err());
    }

    #[test]
    fn dihedral_action() {
        let d = GroupSpec::dihedral(5).unwrap();
        let s = GroupElement::Dihedral { rot: 0, flip: true };
        let r = GroupElement::Dihedral { rot: 1, flip: false };
        for p in 0..5 {
            let rs = d.multiply(&r, &s);
            assert_eq!(d.act(&rs, p), d.act(&r, d.act(&s, p).unwrap()));
        }
    }
}
