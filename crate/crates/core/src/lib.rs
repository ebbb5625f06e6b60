//! Exact parameterized Hermitian Laplacians of oriented graphs.
//!
//! Matrix entries live in cyclotomic fields `Q(zeta_n)` and every
//! determinant is computed exactly. On top of the matrices sit a
//! Cauchy-Binet expansion of principal minors into substructure
//! determinants, a census of all-regular substructures, counting methods
//! built on Galois conjugate parameters, and a cofactor spanning-tree count.

pub mod cyclotomic;
pub mod decomposition;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod hermitian;
pub mod io;
pub mod matrixtree;

pub use cyclotomic::{
    alpha, beta, cycle_contribution, cyclotomic_polynomial, field_arith, field_norm_q5,
    fold_index, golden_ratio, log_power_of, root_of_unity, sqrt5, CycloNum, FieldOp, RootParam,
};
pub use decomposition::{
    cauchy_binet_expand, census, census_total, classify_substructure, structural_determinant,
    CensusClass, CensusEntry, Limits,
};
pub use enumeration::{
    classify_pair, count_alpha_beta, four_vertex_count, four_vertex_system, galois_count,
    triangle_count, FourVertexCounts, FourVertexReport, FourVertexSystem, PairClass,
    TriangleReport, UnicyclicCounts,
};
pub use error::{Error, Result};
pub use graph::{
    Component, ComponentClass, CycleInfo, Edge, OrientedGraph, Substructure, VertexId,
};
pub use hermitian::{
    build_incidence, build_laplacian, determinant, graph_laplacian, laplacian_minor,
    numeric_determinant, CycloMatrix, HermitianMatrix, IncidenceMatrix,
};
pub use matrixtree::{
    brute_force_spanning_trees, mtt_condition, simple_cycles, spanning_trees_via_cofactor,
    SpanningTreeReport,
};
