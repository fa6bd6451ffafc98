//! Covering insertion codes and Turán systems at desk scale.
//!
//! A set `C ⊆ [n]^r` is a covering `(k−r)`-insertion code when every word of
//! `[n]^k` contains some member of `C` as a subsequence; a Turán
//! `(n, k, r)`-system is a family of `r`-subsets of `[n]` meeting every
//! `k`-subset. This crate provides:
//!
//! - [`words`]: subsequence tests, deletion/insertion balls, code symmetry and
//!   canonical forms under symbol renaming and coordinate reversal;
//! - [`cover`]: incidence construction, coverage verification with
//!   lexicographically least witnesses, and a greedy baseline;
//! - [`solve`]: exact branch-and-bound minimization of covering codes and
//!   Turán systems, maximum 1-packings, optimality certificates, and
//!   enumeration of optimal codes up to equivalence;
//! - [`construct`]: verified generators for preimage/mod/random lifts,
//!   conversions between Turán systems and symmetric codes, and the classical
//!   half-cube, two-part graph, and three-part triple systems;
//! - [`bounds`]: certified evaluation and inversion of the closed-form density
//!   bounds, with exact rational arithmetic and directed rounding;
//! - [`diagnostics`]: exact rational checks of the tree and star union
//!   inequalities, pairwise intersection bounds, and the
//!   kernel/petal/residue decomposition of a covering code;
//! - [`fileio`]: plain-text code and system files shared with the CLI.
//!
//! All operations are pure functions on immutable values unless documented
//! otherwise; solver parallelism is confined to worker-local state plus a
//! shared monotone incumbent, and results are independent of worker count.

pub mod bitset;
pub mod bounds;
pub mod construct;
pub mod cover;
pub mod diagnostics;
pub mod fileio;
pub mod solve;
pub mod turan;
pub mod words;

#[cfg(test)]
pub(crate) mod testkit {
    use crate::words::{Code, Word};

    /// The optimal 12-word single-insertion code over three symbols.
    pub fn optimal_343() -> Code {
        let words: [[u16; 3]; 12] = [
            [0, 0, 0],
            [1, 1, 1],
            [2, 2, 2],
            [0, 0, 1],
            [0, 1, 0],
            [1, 0, 0],
            [1, 1, 2],
            [1, 2, 1],
            [2, 1, 1],
            [2, 2, 0],
            [2, 0, 2],
            [0, 2, 2],
        ];
        Code::new(3, 3, words.iter().map(|s| Word::from_slice(s))).unwrap()
    }
}

pub use cover::{
    build_incidence, greedy_cover, verify_cover, verify_turan, CoverInstance, CoverMode,
    CoverSolution, Coverage,
};
pub use solve::{enumerate_optimal, max_packing, min_cover, min_turan, SolveOptions, SolveResult};
pub use turan::TuranSystem;
pub use words::{
    canonical_form, deletion_ball, insertion_ball, is_subsequence, is_symmetric, symmetrize,
    CanonicalGroup, Code, Word,
};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: pattern length {r} exceeds target length {k}")]
    ArityMismatch { r: usize, k: usize },

    #[error("symbol {symbol} out of range for alphabet size {n}")]
    SymbolOutOfRange { symbol: u16, n: u32 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("instance too large: {bits} incidence bits exceeds limit {limit}")]
    InstanceTooLarge { bits: u64, limit: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("refused at this scale: {0}")]
    ScaleRefused(String),

    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("code does not cover (witness: {witness})")]
    NotCovering { witness: String },

    #[error("code is not symmetric (word {word} lacks permutation {missing})")]
    NotSymmetric { word: String, missing: String },

    #[error("invalid covering system (witness: {witness})")]
    InvalidSystem { witness: String },

    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
