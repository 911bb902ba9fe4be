//! Finite vertex-transitive graphs, their word metrics, and computable
//! Gromov-Hausdorff bounds against circle and flat-torus limit models.

pub mod catalog;
pub mod discretize;
pub mod family;
pub mod gh;
pub mod graph;
pub mod groups;
pub mod limits;
pub mod metric;
pub mod structure;
