//! Intervals of the consecutive pattern poset.
//!
//! A permutation `σ` lies below `τ` when some run of adjacent entries of `τ`
//! has the same relative order as `σ`. This crate builds the intervals
//! `[σ, τ]` of that order explicitly and computes their Möbius function,
//! connectivity and shellability, rank structure, and statistics of the
//! exterior (longest bifix) over all of `S_n`.

mod bitset;
pub mod config;
pub mod enumerate;
pub mod error;
pub mod interval;
pub mod mobius;
pub mod perm;
pub mod ranks;
pub mod report;
pub mod stats;
pub mod topology;

pub use config::{OutputFormat, RunConfig};
pub use error::{Error, Result};
pub use interval::{Interval, IntervalExport, MaximalChain};
pub use mobius::{mobius_oracle, mobius_recursive, MobiusBranch, MobiusResult};
pub use perm::{contains, occurrences, reduce, Permutation, Window};
pub use report::{classify, ClassificationReport};
pub use stats::{DistributionTable, SampleEstimate, Statistic};
pub use topology::{ChainLabel, DisconnectionWitness};
