//! Exact computation of the first Hochschild cohomology Lie algebra of a
//! bound quiver algebra `kQ/I`, its radical-preserving part, and the count of
//! `sl_2` summands coming from maximal Kronecker chains.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod derlie;
pub mod dsl;
pub mod error;
pub mod field;
pub mod kronecker;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod report;

pub use algebra::{build_algebra, AlgebraTable, Element, Monomial, MultTable, Presentation, Relation, Term};
pub use derlie::{
    delta_map, derivation_space, hh1, inner_space, loop_criterion, radical_filter, DerSpace, Derivation, Hh1,
    LieAlgebra, Sl2Element,
};
pub use error::{AlgebraError, DeltaError, Error, FieldError, OracleError, ParseError, QuiverError};
pub use field::{FieldDescriptor, Scalar};
pub use kronecker::{
    decomposition_report, equivalence_classes, is_surjective_chain, kronecker_pairs, maximal_chains,
    standard_relations_literal, ChainReport, KroneckerChain, KroneckerPair, Shape,
};
pub use linalg::{kernel_basis, subspace_ops, Mat};
pub use oracle::{bar_hh1_dim, derivations_from_table};
pub use quiver::{
    classify_components, hereditary_hh1_dim, reptype_radsq, separated_quiver, GraphClass, Quiver, RepType,
};
pub use report::{run_analyze, AnalysisReport, AnalyzeOptions};
