//! Quasi wreath graphs and their distance magic labelings.
//!
//! Builds `QW(S)` graphs from 0/1 sequences or segment profiles, classifies
//! them, writes explicit labelings, and checks all of it against an exact
//! zero-eigenspace filter, an exhaustive labeling search, a census of small
//! tetravalent graphs and a two-vertex expansion.
//!
//! Labels use the centered scheme throughout: a graph of order `n` is labeled
//! by `{1-n, 3-n, ..., n-1}` and a labeling is distance magic when every
//! vertex weight is 0.

pub mod canon;
pub mod construct;
pub mod dot;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod kfk;
pub mod labeling;
pub mod linalg;
pub mod qw;
pub mod search;
pub mod spectral;

use num_rational::BigRational;

/// Adjacency matrices over the rationals.
pub type RationalMatrix = linalg::Matrix<BigRational>;
/// Exact kernel bases over the rationals.
pub type NullspaceBasis = linalg::Nullspace<BigRational>;

pub use canon::{canonical_certificate, canonical_form, is_isomorphic, CanonicalCertificate};
pub use construct::{construct_labeling, construct_tilde_labeling};
pub use dot::export_dot;
pub use enumerate::{census_pipeline, enumerate_regular, EnumerationTask};
pub use graph::{Graph, GraphError};
pub use graph6::{parse_graph6, write_graph6, Graph6Error};
pub use kfk::{expand, expand_default, find_zero_antipodal_cycles, ZeroAntipodal4Cycle};
pub use labeling::{
    from_standard, to_standard, verify, verify_standard, wreath_labeling, CenteredLabeling, LabelingDocument, Scheme,
    StandardLabeling, VerificationReport,
};
pub use linalg::ExactField;
pub use qw::{build_qw, build_wreath, classify, Classification, QwSequence, SegmentProfile};
pub use search::{decide_profile, find_labeling, SearchOptions, SearchOutcome, Verdict};
pub use spectral::{adjacency_matrix, nullspace_basis, nullspace_filter, FilterVerdict};
