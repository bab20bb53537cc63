//! zslab: exact computation of zero-sum constants over finite abelian groups.
//!
//! The crate computes the Erdős–Ginzburg–Ziv constant `s(G)` (shortest length
//! forcing a zero-sum subsequence of length `exp(G)`) and its set analogue
//! `g(G)` by exhaustive search with certificates, computes maximum sizes of
//! three-term-progression-free subsets `r(F_p^n)` (cap sets for `p = 3`),
//! builds zero-sum witnesses constructively through recursive group
//! reductions, and evaluates the classical and recent explicit bounds that
//! relate these quantities.
//!
//! Entry points by module:
//!
//! - [`group`]: finite abelian groups in canonical prime-power form, element
//!   arithmetic, Sylow decomposition, and the `pG` subgroup/quotient split.
//! - [`zerosum`]: the exact zero-sum subsequence finder (DP with witness
//!   reconstruction) and the extremal searches behind `s(G)` and `g(G)`.
//! - [`apfree`]: three-term arithmetic progressions, centered-AP counting,
//!   the zero-sum-from-APs builder, and exact `r(F_p^n)`.
//! - [`extractor`]: hyperplane sampling and derandomized extraction of large
//!   AP-free subsets from zero-sum-free sets.
//! - [`egz`]: constructive zero-sum witness finding for arbitrary finite
//!   abelian groups via quotient, p-group, and Sylow reductions.
//! - [`bounds`]: every explicit bound formula, the `J(p)` minimization, and
//!   consistency-checked bound reports.
//! - [`cli`]: the command-line front end used by the `zslab` binary.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod apfree;
pub mod bounds;
pub mod cli;
pub mod egz;
pub mod extractor;
pub mod group;
pub mod zerosum;

use std::fmt;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Precondition violation: malformed order list, non-prime p, point
    /// outside the required set, and similar.
    InvalidInput(String),
    /// Element does not belong to the group it is used with.
    InvalidElement(String),
    /// Index outside `[0, order(G))`.
    InvalidIndex(String),
    /// Group order exceeds a configured cap for the requested operation.
    GroupTooLarge(String),
    /// A constructive solver was handed fewer elements than its guarantee
    /// requires.
    SequenceTooShort { required: usize, actual: usize },
    /// An internal guarantee failed; indicates a bug or an invalid oracle.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::InvalidElement(m) => write!(f, "invalid element: {m}"),
            Error::InvalidIndex(m) => write!(f, "invalid index: {m}"),
            Error::GroupTooLarge(m) => write!(f, "group too large: {m}"),
            Error::SequenceTooShort { required, actual } => {
                write!(f, "sequence too short: need {required} elements, got {actual}")
            }
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub use apfree::{ApTriple, PointSet};
pub use group::{AbelianGroup, GroupElement, SylowComponent};
pub use zerosum::{ExtremalCertificate, GSequence, Witness};
