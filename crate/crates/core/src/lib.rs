//! Degree-based topological graph indices and their sharp extremal bounds.
//!
//! A degree-based index is `F(G) = sum over edges uv of f(d(u), d(v))` for a
//! symmetric kernel `f`. This crate evaluates such indices (Randić,
//! generalised Randić, Zagreb, tabulated or custom kernels), computes the
//! best possible per-vertex bound over graphs with degrees in `[delta, Delta]`
//! together with its equality certificate, classifies the extremal behaviour
//! of the generalised Randić index by exponent, builds the extremal graphs,
//! and checks everything against exhaustive enumeration of small graphs.

pub mod constructors;
pub mod error;
pub mod extremal;
pub mod format;
pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod regimes;
pub mod value;

pub use error::{Error, ParseErrorKind, Result};
pub use extremal::{
    certify_equality, optimal_pairs, pair_objective, vertex_bound, weight_certificate, Direction,
    EqualityCertificate, ExtremalResult,
};
pub use format::{parse_graph, serialise, Format};
pub use graph::{classify_structure, degree_summary, DegreeRange, DegreeSummary, Graph, Structure};
pub use kernel::{index_value, Alpha, Exactness, Kernel, Table};
pub use oracle::{enumerate, verify_bound, VerificationReport};
pub use regimes::{classify, thresholds, Regime, RegimeReport};
pub use value::Value;
