//! Named graph families with their comparison maps to limit models.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::catalog;
use crate::graph::LabeledGraph;
use crate::groups::{build_cayley, GenSet, GroupElement, GroupError, GroupSpec};
use crate::limits::{LimitModel, PolyhedralNorm, TorusModel};

#[derive(Debug, Error, PartialEq)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("invalid generators: {0}")]
    InvalidGenerators(String),
    #[error("parameter n = {n} is out of range for {family}")]
    BadParameter { family: String, n: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Cyclic,
    /// `(Z/n)^k` with the standard generators.
    Torus(usize),
    /// `Z/n^k` with generators `+-1, +-n, .., +-n^(k-1)`.
    ShiftedBase(usize),
    Heisenberg,
    Dihedral,
    /// Random 3-regular graphs on `n` vertices.
    Random3Regular,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Cyclic => f.write_str("cyclic"),
            FamilyKind::Torus(k) => write!(f, "torus-{k}"),
            FamilyKind::ShiftedBase(k) => write!(f, "shifted-base-{k}"),
            FamilyKind::Heisenberg => f.write_str("heisenberg"),
            FamilyKind::Dihedral => f.write_str("dihedral"),
            FamilyKind::Random3Regular => f.write_str("random-3-regular"),
        }
    }
}

impl FromStr for FamilyKind {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rank = |prefix: &str| s.strip_prefix(prefix).and_then(|k| k.parse::<usize>().ok()).filter(|k| (1..=3).contains(k));
        match s {
            "cyclic" => Ok(FamilyKind::Cyclic),
            "heisenberg" => Ok(FamilyKind::Heisenberg),
            "dihedral" => Ok(FamilyKind::Dihedral),
            "random-3-regular" => Ok(FamilyKind::Random3Regular),
            _ => rank("torus-")
                .map(FamilyKind::Torus)
                .or_else(|| rank("shifted-base-").map(FamilyKind::ShiftedBase))
                .ok_or_else(|| FamilyError::UnknownFamily(s.to_string())),
        }
    }
}

/// A family name with optional generator override and sampling seed.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    /// Integer generator vectors replacing the standard ones (cyclic and
    /// torus families only).
    pub gens: Option<Vec<Vec<i64>>>,
    pub seed: u64,
}

/// One member of a family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub n: usize,
    pub graph: LabeledGraph,
    /// Image of each vertex in the fundamental domain of the model, when a
    /// comparison map exists.
    pub images: Option<Vec<Vec<f64>>>,
    /// Whether the comparison map intertwines a transitive group action, so
    /// distortion can be measured from vertex 0 alone.
    pub equivariant: bool,
}

/// Parses `--gens` syntax: vectors separated by `;`, entries by `,`.
pub fn parse_gens(s: &str) -> Result<Vec<Vec<i64>>, FamilyError> {
    let gens: Vec<Vec<i64>> = s
        .split(';')
        .map(|v| {
            v.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| FamilyError::InvalidGenerators(format!("bad entry {x:?}"))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let m = gens.first().map_or(0, Vec::len);
    if m == 0 || gens.iter().any(|g| g.len() != m) {
        return Err(FamilyError::InvalidGenerators("vectors must share one positive length".into()));
    }
    Ok(gens)
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        FamilySpec { kind, gens: None, seed: 0 }
    }

    pub fn with_gens(mut self, gens: Vec<Vec<i64>>) -> Result<Self, FamilyError> {
        let rank = match self.kind {
            FamilyKind::Cyclic => 1,
            FamilyKind::Torus(k) => k,
            _ => return Err(FamilyError::InvalidGenerators(format!("{} takes no generator override", self.kind))),
        };
        if gens.is_empty() || gens.iter().any(|g| g.len() != rank) {
            return Err(FamilyError::InvalidGenerators(format!("{} needs vectors of length {rank}", self.kind)));
        }
        PolyhedralNorm::from_integer(&gens).map_err(|e| FamilyError::InvalidGenerators(e.to_string()))?;
        self.gens = Some(gens);
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Natural limit model of the family, if it has a comparison map.
    pub fn default_model(&self) -> Option<LimitModel> {
        let torus = |k: usize| match &self.gens {
            Some(g) => LimitModel::Torus(TorusModel::unit_lattice(PolyhedralNorm::from_integer(g).expect("checked"))),
            None if k == 1 => LimitModel::Circle,
            None => LimitModel::Torus(TorusModel::l1_torus(k)),
        };
        match self.kind {
            FamilyKind::Cyclic => Some(torus(1)),
            FamilyKind::Torus(k) => Some(torus(k)),
            FamilyKind::ShiftedBase(1) => Some(LimitModel::Circle),
            FamilyKind::ShiftedBase(k) => Some(LimitModel::Torus(TorusModel::l1_torus(k))),
            FamilyKind::Heisenberg => Some(LimitModel::Torus(TorusModel::l1_torus(2))),
            FamilyKind::Dihedral => Some(LimitModel::Circle),
            FamilyKind::Random3Regular => None,
        }
    }

    /// Dimension of the comparison map's target.
    pub fn image_dim(&self) -> Option<usize> {
        match self.kind {
            FamilyKind::Cyclic | FamilyKind::Dihedral => Some(1),
            FamilyKind::Torus(k) | FamilyKind::ShiftedBase(k) => Some(k),
            FamilyKind::Heisenberg => Some(2),
            FamilyKind::Random3Regular => None,
        }
    }

    pub fn build(&self, n: usize, budget: usize) -> Result<FamilyMember, FamilyError> {
        let bad = || FamilyError::BadParameter { family: self.kind.to_string(), n };
        let ni = i64::try_from(n).map_err(|_| bad())?;
        let nf = n as f64;
        match &self.kind {
            FamilyKind::Cyclic | FamilyKind::Torus(_) => {
                let k = self.image_dim().expect("abelian family");
                if n < 3 {
                    return Err(bad());
                }
                let spec = GroupSpec::cyclic_power(ni, k)?;
                let gens = match &self.gens {
                    Some(g) => GenSet::symmetric(
                        &spec,
                        g.iter().map(|v| spec.canonical(GroupElement::Residues(v.clone()))).collect::<Result<_, _>>()?,
                    )?,
                    None => GenSet::standard(&spec),
                };
                let cg = build_cayley(&spec, &gens, budget)?;
                let images = cg
                    .elements
                    .iter()
                    .map(|g| match g {
                        GroupElement::Residues(v) => v.iter().map(|&x| x as f64 / nf).collect(),
                        _ => unreachable!("cyclic powers have residue elements"),
                    })
                    .collect();
                Ok(FamilyMember { n, graph: cg.graph, images: Some(images), equivariant: true })
            }
            FamilyKind::ShiftedBase(k) => {
                if n < 3 {
                    return Err(bad());
                }
                let order = ni.checked_pow(*k as u32).filter(|&o| o as u64 <= budget as u64).ok_or_else(bad)?;
                let spec = GroupSpec::cyclic_power(order, 1)?;
                let gens = (0..*k).map(|i| GroupElement::Residues(vec![ni.pow(i as u32)])).collect();
                let cg = build_cayley(&spec, &GenSet::symmetric(&spec, gens)?, budget)?;
                let images = cg
                    .elements
                    .iter()
                    .map(|g| match g {
                        GroupElement::Residues(v) => {
                            let mut x = v[0];
                            (0..*k)
                                .map(|_| {
                                    let d = x % ni;
                                    x /= ni;
                                    d as f64 / nf
                                })
                                .collect()
                        }
                        _ => unreachable!("cyclic groups have residue elements"),
                    })
                    .collect();
                Ok(FamilyMember { n, graph: cg.graph, images: Some(images), equivariant: *k == 1 })
            }
            FamilyKind::Heisenberg => {
                if n < 2 {
                    return Err(bad());
                }
                let spec = GroupSpec::heisenberg(ni)?;
                let cg = build_cayley(&spec, &GenSet::standard(&spec), budget)?;
                let images = cg
                    .elements
                    .iter()
                    .map(|g| match g {
                        GroupElement::Unipotent { a, b, .. } => vec![*a as f64 / nf, *b as f64 / nf],
                        _ => unreachable!("Heisenberg elements are unipotent"),
                    })
                    .collect();
                Ok(FamilyMember { n, graph: cg.graph, images: Some(images), equivariant: true })
            }
            FamilyKind::Dihedral => {
                if n < 3 {
                    return Err(bad());
                }
                let spec = GroupSpec::dihedral(ni)?;
                let cg = build_cayley(&spec, &GenSet::standard(&spec), budget)?;
                let images = cg
                    .elements
                    .iter()
                    .map(|g| match g {
                        GroupElement::Dihedral { rot, .. } => vec![*rot as f64 / nf],
                        _ => unreachable!("dihedral elements"),
                    })
                    .collect();
                Ok(FamilyMember { n, graph: cg.graph, images: Some(images), equivariant: false })
            }
            FamilyKind::Random3Regular => {
                if n < 4 || n % 2 == 1 || n > budget {
                    return Err(bad());
                }
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                Ok(FamilyMember { n, graph: catalog::random_regular(n, 3, &mut rng), images: None, equivariant: false })
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(FamilySpec::new(s.parse()?))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}
