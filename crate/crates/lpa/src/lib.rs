//! Graph-theoretic invariants of Leavitt path algebras of finite directed
//! multigraphs.
//!
//! Everything the crate computes is determined by the graph alone: the
//! stable rank of `L(E)` (1, 2 or infinite, with a machine-checkable
//! certificate), the lattice of hereditary saturated vertex sets and the
//! graph constructions attached to it (quotient, restriction, ideal graph),
//! cycle structure (conditions (L) and (K), isolated cycles), the `K_0`
//! group with the class of the identity via exact Smith normal form, and an
//! exact Laurent-polynomial checker for unimodular-row reduction over
//! `K[z, z^-1]`.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything is safe to share across threads.

#![forbid(unsafe_code)]

pub mod cycles;
pub mod families;
pub mod fuzz;
pub mod graph;
pub mod hereditary;
pub mod ktheory;
pub mod laurent;
pub mod parse;
pub mod rank;
pub mod report;

pub mod corpus;

pub use cycles::{ClosedSimplePath, Cycle};
pub use families::FamilySpec;
pub use graph::{AdjacencyMatrix, Edge, Graph, VertexSet};
pub use hereditary::{HsLattice, HsSet, IdealGraphOutcome, InfiniteWitness, DEFAULT_LATTICE_CAP};
pub use ktheory::{IntMatrix, K0Presentation, SnfResult};
pub use laurent::{LaurentPoly, ReductionWitness};
pub use parse::parse_graph;
pub use rank::{Certificate, RankVerdict, StableRank};
pub use report::Report;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("invalid {kind} id `{id}`: {why}")]
    InvalidId {
        kind: &'static str,
        id: String,
        why: &'static str,
    },
    #[error("vertex set is not hereditary: `{from}` is in the set but emits an edge to `{to}` outside it")]
    NotHereditary { from: String, to: String },
    #[error("vertex set is not saturated: every edge from `{vertex}` lands in the set, but `{vertex}` is missing")]
    NotSaturated { vertex: String },
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("the vertex set must be nonempty")]
    EmptySet,
    #[error("not a closed simple path of this graph: {0}")]
    InvalidPath(String),
    #[error("closed simple path enumeration at `{vertex}` exceeded the cap of {cap}")]
    CspOverflow { vertex: String, cap: usize },
    #[error("hereditary saturated lattice truncated at {cap} elements without a decisive witness")]
    Inconclusive { cap: usize },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("the zero polynomial is not a valid argument here")]
    ZeroPolynomial,
}

pub type Result<T> = std::result::Result<T, Error>;
