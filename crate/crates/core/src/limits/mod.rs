//! Limit models: polyhedral norms, flat tori, convergence tables, and the
//! sumset convexification check.

pub(crate) mod convergence;
mod norm;
mod sumset;
mod torus;

use thiserror::Error;

pub use convergence::{convergence_table, ConvergenceReport, ConvergenceRow};
pub use norm::{NormFacets, PolyhedralNorm};
pub use sumset::{sumset_convexity_gap, SumsetGap};
pub use torus::{LimitModel, TorusModel};

#[derive(Debug, Error, PartialEq)]
pub enum LimitError {
    #[error("invalid norm: {0}")]
    InvalidNorm(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("family {0} has no comparison map to a limit model")]
    NoComparisonMap(String),
    #[error("model has dimension {model} but the family maps to dimension {family}")]
    DimensionMismatch { model: usize, family: usize },
    #[error("sumset of {size} points exceeds the budget of {budget}")]
    BudgetExceeded { size: u128, budget: usize },
    #[error("invalid point set: {0}")]
    InvalidPoints(String),
    #[error("cannot parse model {0:?}")]
    UnknownModel(String),
    #[error(transparent)]
    Family(#[from] crate::family::FamilyError),
}
