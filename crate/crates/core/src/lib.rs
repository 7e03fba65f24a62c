//! Exact-arithmetic toolkit for graph-counting polynomials of oriented
//! graphs and the location of their zeros.
//!
//! The crate has four layers:
//!
//! * [`graph`] / [`json`] / [`random`] — the graph data model: oriented and
//!   non-oriented graphs with string ids, validation, bipartiteness checking,
//!   doubling of non-oriented graphs into antiparallel arc pairs, degree
//!   statistics, deterministic random generation, and the graph JSON format.
//! * [`subgraph`] / [`counting`] — enumeration of the unbranched, loop and
//!   even-unbranched families with component decomposition, and every
//!   counting polynomial built from them by direct combinatorial
//!   construction, including the multivariate expansion with endpoint
//!   weights, the pairing condition, and the closed forms for doubled simple
//!   graphs. This side is the oracle in every equivalence test.
//! * [`cyc8`] / [`multiaffine`] / [`engine`] — the independent construction:
//!   exact multiaffine polynomial algebra over the eighth-cyclotomic
//!   rationals, vertex factors, and Asano contractions `(z'_e, z''_e) → z_e`
//!   producing the same polynomials with no enumeration involved.
//! * [`certify`] / [`roots`] — exact Sturm-sequence certificates for the
//!   zero-location statements (all roots real negative, real nonpositive,
//!   purely imaginary, and the deg₂ bound) plus a numeric Aberth–Ehrlich
//!   cross-check and the numeric half-plane report.
//!
//! All counting and certification is exact; floating point appears only in
//! [`roots`]. Values are immutable after construction and safe to share
//! across threads.

#![forbid(unsafe_code)]

pub mod certify;
pub mod counting;
pub mod cyc8;
pub mod engine;
pub mod graph;
pub mod json;
pub mod multiaffine;
pub mod random;
pub mod roots;
mod sturm;

pub use certify::{
    certify_deg2_bound, certify_purely_imaginary, certify_real_negative, rational_to_decimal,
    square_free_decomposition, sturm_count, to_int_poly, CertProperty, Certificate,
    CertificateJson, CertifyError, IntPoly, Verdict,
};
pub use counting::{
    closed_form_oriented_unbranched, closed_form_oriented_unbranched_even, multivar_p,
    pairing_check, poly_family, poly_unbranched_even_by_sizes, poly_undirected_unbranched,
    poly_v0, EvenClosedFormVariant, PairingOutcome, PolynomialJson, PWeights, UniGCPoly, V0Poly,
};
pub use cyc8::Cyc8;
pub use engine::{contract_graph, engine_universe, vertex_factor, AScheme};
pub use graph::{
    check_bipartite, double, Bipartition, DoubledGraph, GraphError, NotBipartite, OrientedGraph,
    Side, UndirectedGraph,
};
pub use json::{parse_graph, serialize_graph, ParsedGraph};
pub use multiaffine::{
    CycUniPoly, EngineError, MultiAffineJson, MultiAffinePoly, Universe, VarMask,
};
pub use random::{random_graph, GraphKind, SplitMix64};
pub use roots::{check_halfplane_negative, numeric_roots, HalfplaneReport, NumericRoot, RootReport};
pub use sturm::Endpoint;
pub use subgraph::{
    decompose, enum_family, enum_undirected_unbranched, is_loop_subgraph, is_unbranched,
    Component, ComponentDecomposition, ComponentKind, EnumError, Family, Subgraph,
};

pub mod subgraph;
