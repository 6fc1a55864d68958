use thiserror::Error;

use crate::perm::Permutation;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("permutation length {len} exceeds the supported maximum of {max}")]
    Capacity { len: usize, max: usize },

    #[error("{what} = {value} is out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("the exterior is undefined for permutations of length 1")]
    UndefinedExterior,

    #[error("the interior is undefined for permutations of length < 3")]
    UndefinedInterior,

    #[error("{sigma} is not contained in {tau}")]
    NotComparable {
        sigma: Box<Permutation>,
        tau: Box<Permutation>,
    },

    #[error("{what}: {count} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        count: usize,
        cap: usize,
    },

    #[error("not a maximal chain of the interval: {0}")]
    NotAChain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A construction that must always succeed has failed. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
