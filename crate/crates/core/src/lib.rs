//! Computation in the generic d-dimensional rigidity matroid.
//!
//! * [`graph`], [`graph6`], [`canon`]: simple graphs, their text encoding and
//!   canonical labeling.
//! * [`rigidity`]: rigidity matrices over a prime field or the integers,
//!   randomized generic rank with explicit certificates, matroid predicates
//!   and sparsity counts.
//! * [`constructions`]: named graph families and the extension, split, cone
//!   and gluing operations.
//! * [`enumeration`]: isomorph-free generation under degree and sparsity
//!   constraints.
//! * [`harness`]: verification suites producing JSON reports.

pub mod canon;
pub mod constructions;
pub mod enumeration;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod par;
pub mod rigidity;

pub use canon::{canonical_code, canonical_form, canonical_labeling, is_isomorphic, CanonicalLabeling};
pub use graph::{edge, Connectivity, DegreeProfile, Edge, Graph, GraphError};
pub use par::Exec;

/// Toolkit version recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `n choose 2`.
#[inline]
pub const fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
