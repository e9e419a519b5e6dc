//! Exact computation of nearly-independence numbers of small graphs.
//!
//! A k-nearly vertex independent set induces exactly k edges; α_k is the
//! maximum cardinality of such a set. This crate computes α₀ and α₁ exactly
//! (plus α_k by brute force), recognizes good graphs both by definition and
//! by join decomposition, generates the named extremal families, and
//! verifies the bound and structure theorems exhaustively over all labeled
//! graphs up to order 8.

pub mod bits;
pub mod families;
pub mod formats;
pub mod goodness;
pub mod graph;
pub mod random;
pub mod solver;
pub mod verify;

pub use bits::VertexSet;
pub use families::{closed_form_alpha1, generate, FamilyError, FamilySpec};
pub use formats::{
    emit_edge_list, emit_graph6, parse_edge_list, parse_graph6, render_report, FormatError,
};
pub use goodness::{
    build_h_member, is_good_definitional, is_good_edge, is_good_structural, sample_h_member,
    GoodnessReport, JoinDecomposition, Recipe, RecipeError,
};
pub use graph::{Graph, GraphError, VertexMap, MAX_VERTICES};
pub use random::gnp;
pub use solver::{
    alpha0_exact, alpha1_exact, alpha_k_oracle, alpha_k_oracle_unguarded, validate_witness,
    AlphaResult, Method, SolverError, ORACLE_MAX_ORDER,
};
pub use verify::{
    check_corpus, check_t1, check_t2, check_t3, check_t4, check_theorem, check_theorem_range,
    is_isomorphic, Filter, GraphUniverse, TheoremId, TheoremReport, VerifyError, VerifyOpts,
    Violation, ISO_MAX_ORDER, UNIVERSE_MAX_ORDER, UNIVERSE_MAX_ORDER_FORCED,
};
