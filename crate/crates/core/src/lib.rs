//! Familial graph compression.
//!
//! A graph is compressed by a pattern `F` by merging every node set that is
//! the image of an embedding of `F` (as a motif or as a graphlet), closing
//! the overlaps transitively, and taking the quotient graph. The decision
//! problem asks whether a sequence of such steps drawn from a family of
//! patterns turns `G` into a graph isomorphic to `H`.
//!
//! The crate contains:
//!
//! - [`graph`]: the immutable simple-graph value type and constructors.
//! - [`canon`]: exact canonical certificates and isomorphism testing.
//! - [`matcher`]: motif / graphlet occurrence enumeration.
//! - [`compression`]: occurrence partitions, compression steps and the
//!   exhaustive memoized solver.
//! - [`reduction`]: exact cover by 3-sets, its reduction to compression,
//!   witness translation, brute-force oracles and instance generators.
//! - [`verify`]: batch cross-checks of the reduction against brute force.
//! - [`io`], [`dot`] and [`report`]: file formats, Graphviz output and
//!   solver reports.

pub mod canon;
pub mod compression;
pub mod dot;
pub mod error;
pub mod graph;
pub mod io;
pub mod matcher;
pub mod reduction;
pub mod report;
mod union_find;
pub mod verify;

pub use canon::{canonical_certificate, is_isomorphic, CanonicalCertificate};
pub use compression::{
    compress_step, occurrence_partition, replay, solve_fgc, solve_fgc_with, CompressionWitness,
    FgcInstance, NodePartition, SolveOutcome, SolveStats, SolverConfig,
};
pub use error::{Error, Result};
pub use graph::{cycle_graph, disjoint_union, Graph, NodeId};
pub use matcher::{enumerate_occurrences, has_occurrence, MatchMode, Occurrence, Pattern};
