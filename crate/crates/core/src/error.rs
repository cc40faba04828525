use thiserror::Error;

use crate::merge_tree::HyperEdge;
use crate::perm::Permutation;
use crate::extended::SearchReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("transition t{index} out of range for permutations of length {len}")]
    TransitionOutOfRange { index: usize, len: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("not a permutation of 1..={len}: {entries:?}")]
    NotAPermutation { entries: Vec<u8>, len: usize },

    #[error("invalid cycle {0:?}: elements must be distinct and nonempty")]
    InvalidCycle(Vec<u8>),

    #[error("{0} is odd; only even permutations belong to a class")]
    OddPermutation(Permutation),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid class label [{x},{y}] for length {len}")]
    InvalidLabel { x: u8, y: u8, len: usize },

    #[error("edge {edge} touches {present} constructed classes (expected exactly one)")]
    ConstructionOrder { edge: HyperEdge, present: usize },

    #[error("splice point for edge {edge} is not unique ({found} candidates)")]
    SplicePoint { edge: HyperEdge, found: usize },

    #[error("{0} is not contained in any chain")]
    NotInAnyChain(Permutation),

    #[error("{0} and {1} are not related by a single push-to-the-top transition")]
    NotATransition(Permutation, Permutation),

    #[error("splice failed: {0}")]
    Splice(String),

    #[error("connection formula disagrees with chain tracing: {0}")]
    FormulaMismatch(String),

    #[error("spanning selection failed: {0}")]
    Selection(String),

    #[error("invalid embedding map: {0}")]
    InvalidMap(String),

    #[error("rewrite at {pivot} is not applicable: {reason}")]
    InapplicableRewrite { pivot: Permutation, reason: String },

    #[error("invalid insertion site: {0}")]
    InvalidSite(String),

    #[error("no extended snake found\n{0}")]
    ConjectureUnresolved(Box<SearchReport>),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
