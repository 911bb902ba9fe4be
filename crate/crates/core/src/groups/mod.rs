//! Finite groups, Cayley and Cayley-Abels graphs, and exhaustive checkers for
//! algebraic statements about them.

mod algebra;
mod cayley;
mod hnf;
mod spec;

use thiserror::Error;

pub use algebra::{
    abelianize, commutator_width_check, lower_central_series, normal_closure,
    normal_closure_bounded_check, stabilizer_bound_check, word_lengths, Abelianization,
    CommutatorWidthReport, NormalClosureReport, StabilizerReport, WordLengths,
};
pub use cayley::{
    build_cayley, build_cayley_abels, finite_index_subgraph, CayleyAbels, CayleyGraph,
    FiniteIndexSubgraph,
};
pub use hnf::{hermite_normal_form, reduce_mod_hnf};
pub use spec::{GenSet, GroupElement, GroupKind, GroupSpec, ParseElementError, DEFAULT_BUDGET};

#[derive(Debug, Error, PartialEq)]
pub enum GroupError {
    #[error("invalid group: {0}")]
    InvalidSpec(String),
    #[error("enumeration budget of {budget} elements exceeded")]
    BudgetExceeded { budget: usize },
    #[error("generators reach only {reached} of {order} elements")]
    NotGenerating { reached: usize, order: u64 },
    #[error("{0} is not an element of this group")]
    ForeignElement(String),
    #[error("group has no natural action on points")]
    NoAction,
    #[error("action is intransitive: orbit of size {orbit} in a domain of {degree}")]
    Intransitive { orbit: usize, degree: usize },
    #[error("quotient by the stabilizer is trivial")]
    TrivialQuotient,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("nilpotency step {step} exceeds the assumed step {assumed}")]
    StepExceeded { step: usize, assumed: usize },
    #[error("action is not faithful: kernel of order {kernel}")]
    NotFaithful { kernel: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not abelian")]
    SubgroupNotAbelian,
    #[error("orbit is not {m}-dense: a vertex lies at distance {distance}")]
    OrbitNotDense { m: u32, distance: u32 },
    #[error("empty orbit")]
    EmptyOrbit,
    #[error("graph is disconnected")]
    Disconnected,
}
