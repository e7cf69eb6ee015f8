//! Toolkit for list packing and correspondence packing of graphs.
//!
//! A *packing* of size `k` is a family of `k` pairwise-disjoint proper
//! colourings. This crate provides the data model ([`Graph`],
//! [`ListAssignment`], [`CorrespondenceCover`], [`Packing`]), exhaustive
//! deciders in [`exact`], constructive packers in [`constructive`],
//! randomized packers in [`probabilistic`], permanent and transversal
//! machinery in [`matrixlab`], and the extremal instances in [`generators`].

pub mod assignment;
pub mod constructive;
pub mod cover;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod io;
pub mod matching;
pub mod matrixlab;
pub mod packing;
pub mod probabilistic;
pub mod rng;
pub mod sampling;

pub use assignment::{Colour, ListAssignment};
pub use cover::{list_to_cover, CorrespondenceCover, Violation};
pub use graph::{degeneracy_order, Graph};
pub use packing::{
    validate_list_packing, validate_packing, Packing, PackingMode, PartialPacking,
};

use thiserror::Error;

/// Default node budget for the exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid list assignment: {0}")]
    InvalidLists(String),
    #[error("invalid cover: {0}")]
    InvalidCover(Violation),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("matrix dimension {k} exceeds the supported bound {max}")]
    MatrixTooLarge { k: usize, max: usize },
    #[error("arithmetic overflow while evaluating the permanent")]
    Overflow,
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("malformed instance: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
