//! Groups and generating sets read from a JSON file.

use serde::Deserialize;
use vtg_core::graph::LabeledGraph;
use vtg_core::groups::{build_cayley, build_cayley_abels, GenSet, GroupElement, GroupSpec};

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum GroupFile {
    CyclicPower { modulus: i64, rank: usize },
    AbelianQuotient { basis: Vec<Vec<i64>> },
    Heisenberg { modulus: i64 },
    Dihedral { n: i64 },
    Permutation { degree: usize, generators: Vec<Vec<u32>> },
}

/// `{"group": {"kind": ..}, "generators": ["p:1,2,0", ..], "base_point": 0}`.
///
/// `generators` defaults to the standard generators of the group. With
/// `base_point` the Cayley-Abels graph on that point's orbit is built
/// instead of the Cayley graph.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomCayley {
    group: GroupFile,
    #[serde(default)]
    generators: Option<Vec<String>>,
    #[serde(default)]
    base_point: Option<usize>,
}

impl CustomCayley {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn build(&self, budget: usize) -> Result<LabeledGraph, String> {
        let spec = match &self.group {
            GroupFile::CyclicPower { modulus, rank } => GroupSpec::cyclic_power(*modulus, *rank),
            GroupFile::AbelianQuotient { basis } => GroupSpec::abelian_quotient(basis.clone()),
            GroupFile::Heisenberg { modulus } => GroupSpec::heisenberg(*modulus),
            GroupFile::Dihedral { n } => GroupSpec::dihedral(*n),
            GroupFile::Permutation { degree, generators } => GroupSpec::permutation(*degree, generators.clone()),
        }
        .map_err(|e| e.to_string())?;
        let gens = match &self.generators {
            None => GenSet::standard(&spec),
            Some(list) => {
                let elements = list
                    .iter()
                    .map(|s| s.parse::<GroupElement>().map_err(|_| format!("bad generator literal {s:?}")))
                    .collect::<Result<Vec<_>, _>>()?;
                GenSet::symmetric(&spec, elements).map_err(|e| e.to_string())?
            }
        };
        let graph = match self.base_point {
            None => build_cayley(&spec, &gens, budget).map_err(|e| e.to_string())?.graph,
            Some(p) => build_cayley_abels(&spec, p, &gens, budget).map_err(|e| e.to_string())?.graph,
        };
        Ok(graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_with_explicit_generators() {
        let c = CustomCayley::parse(r#"{"group": {"kind": "cyclic-power", "modulus": 10, "rank": 1}, "generators": ["z:1", "z:3"]}"#)
            .unwrap();
        let g = c.build(1000).unwrap();
        assert_eq!((g.num_vertices(), g.max_degree()), (10, 4));
    }

    #[test]
    fn permutation_orbit() {
        let text = r#"{"group": {"kind": "permutation", "degree": 5, "generators": [[1,2,3,4,0]]}, "base_point": 0}"#;
        let g = CustomCayley::parse(text).unwrap().build(1000).unwrap();
        assert_eq!(g.num_vertices(), 5);
    }

    #[test]
    fn rejects_unknown_kinds() {
        assert!(CustomCayley::parse(r#"{"group": {"kind": "free", "rank": 2}}"#).is_err());
        let bad = CustomCayley::parse(r#"{"group": {"kind": "dihedral", "n": 6}, "generators": ["q:1"]}"#).unwrap();
        assert!(bad.build(1000).is_err());
    }
}
