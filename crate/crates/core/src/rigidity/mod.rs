//! Rigidity matrices, generic rank and the matroid predicates.

pub mod bounds;
pub mod exact;
pub mod field;
pub mod matrix;
pub mod sparsity;
pub mod verdict;

use thiserror::Error;

pub use bounds::{count_rank_bound, cut_rank_bound, dependent_by_cut, CutCertificate};
pub use matrix::{random_realization, Coordinates, FieldChoice, Realization, RigidityMatrix};
pub use sparsity::{complete_rank, is_d_sparse, SparsityReport};
pub use verdict::{
    check, generic_rank, is_circuit, is_circuit_by_deletion, is_flexible_circuit, is_independent,
    is_rigid, Basis, Certificate, Flag, Flags, MatroidVerdict, Predicate, PredicateResult,
    RankConfig, TriState, DEFAULT_SEED, DEFAULT_THRESHOLD_LOG2,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigidityError {
    #[error("realization has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}
