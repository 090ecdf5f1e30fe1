//! Latin-square graphs, their equitable partitions, and the classification
//! of `(n-3)`-perfect sets as disjoint unions of lines and inflated corner
//! sets.

pub mod cellset;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod inflation;
pub mod latin;
pub mod matrix;
pub mod neg3;
pub mod oracle;
pub mod partition;
pub mod perfect;

pub use cellset::CellSet;
pub use graph::{build_graph, build_mols_graph, closed_form_spectrum, LatinSquareGraph};
pub use inflation::{inflate, inflation_structures, standard_q_partition, InflationSpec, InflationStructure};
pub use latin::{Cell, Isotopy, LatinError, LatinSquare, Permutation};
pub use matrix::IntMatrix;
pub use partition::{
    classify_eigenvalues, is_mu_equitable, is_mu_perfect, quotient_matrix, Equitability, Partition, QuotientMatrix,
};
