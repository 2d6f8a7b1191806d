//! Construction and certification of *good acyclic orientations*: acyclic
//! orientations of a graph that contain both an out-branching rooted at a
//! designated source `s` and an in-branching rooted at a designated sink `t`,
//! with the two branchings edge-disjoint.
//!
//! The central working object is an *(s,t)-triple*: a total vertex order
//! together with two edge-disjoint spanning trees `I` and `O` such that, when
//! every edge is oriented from its earlier to its later endpoint, `O` becomes
//! an out-branching from `s` (the first vertex) and `I` an in-branching to `t`
//! (the last vertex).  Orienting *all* edges by the same order then yields a
//! good acyclic orientation of the whole graph.
//!
//! Module layout:
//!
//! * [`graph`] — multigraph model with stable edge ids, partitions, quotients,
//!   orientations, and exact connectivity checks.
//! * [`sparsity`] — (2,ℓ)-sparsity via the pebble game: recognising graphs
//!   that are the union of two edge-disjoint spanning trees ("2T-graphs"),
//!   extracting the two trees, and decomposing into generic circuits.
//! * [`quartic`] — quartic 2T-graphs (degrees 3/4, four degree-3 "transit"
//!   vertices), their block coarsification, and normality certificates.
//! * [`orient`] — building and composing (s,t)-triples: the bipartite-matching
//!   decision procedure, backtracking search on generic circuits, sum and
//!   quotient composition, and the end-to-end pipeline for quartics and
//!   4-regular 4-connected graphs.
//! * [`dense`] — triples for graphs of minimum degree ≥ ⌊n/2⌋ via greedy
//!   circuit growth and bridging.
//! * [`oracle`] — small brute-force reference implementations used to
//!   cross-check the fast algorithms.
//! * [`generate`] — deterministic generators for the named graph families
//!   used throughout the test-suite and CLI.
//! * [`batch`] — data-parallel sweep helper (rayon-backed behind the
//!   `parallel` feature, with an always-available sequential fallback).
//!
//! Every operation is a pure function of its inputs; all iteration orders are
//! ascending by id, so results are bit-for-bit reproducible.

#![forbid(unsafe_code)]

pub mod batch;
pub mod dense;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod orient;
pub mod quartic;
pub mod sparsity;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Structurally invalid input (loops, out-of-range ids, bad partition…).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Text that could not be parsed as a graph or triple.
    #[error("parse error: {0}")]
    Parse(String),
    /// Input violates a documented precondition of the operation.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A search-based operation found no object although one was requested.
    #[error("search failed: {0}")]
    SearchFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
