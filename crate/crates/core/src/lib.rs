//! Snake-in-the-box codes over the alternating group under the Kendall
//! τ-metric, built from push-to-the-top transitions.
//!
//! [`assemble_he_snake`] builds a snake of size `(2n+1)!/2 - 2n + 1` by
//! merging chains through linkages; [`assemble_extended_snake`] inserts the
//! chains in pairs into an embedded smaller snake, reaching
//! `(2n+1)!/2 - 2n + 3`. [`verify_snake`] checks any snake from scratch.

pub mod assemble;
pub mod chain;
pub mod error;
pub mod extended;
pub mod format;
pub mod graph;
pub mod matching;
pub mod merge_tree;
pub mod partition;
pub mod perm;
pub mod snake;
pub mod spanning;
pub mod verify;

pub use assemble::{assemble_he_snake, he_size};
pub use chain::{build_all_chains, build_chain, Chain, ChainSet};
pub use error::{Error, Result};
pub use extended::{
    assemble_extended_snake, extended_size, EmbeddingMap, ExtendedSnake, InsertionSite,
    SearchReport, SewRewrite,
};
pub use format::SnakeFile;
pub use graph::{build_chain_graph, ChainGraph, ConnectionEdge, Linkage};
pub use merge_tree::{build_merge_tree, validate_tree, HyperEdge, MergeTree};
pub use partition::{class_of, necklace_of, ClassLabel, Necklace};
pub use perm::{kendall_distance, Cycle, Permutation, Transition};
pub use snake::Snake;
pub use spanning::{select_spanning_tree, SpanningSelection};
pub use verify::{check_upper_bounds, missing_codewords, verify_snake, VerificationReport, VerifyMode};
