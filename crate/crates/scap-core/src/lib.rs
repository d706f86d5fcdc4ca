//! Byte-level n-gram author profiles for source code authorship attribution.
//!
//! The pipeline: extract byte-level n-grams from source files, rank them by
//! frequency into truncated profiles, and attribute test files to the known
//! author whose profile shares the most n-grams. On top of that sit the Java
//! identifier tools (lexing, comment stripping, identifier classification and
//! neutralization), corpus management, the (n, L) experiment grid runner, and
//! the paired statistics used to compare benchmark and treatment grids.

pub mod classifier;
pub mod corpus;
pub mod error;
pub mod experiment;
pub mod java;
pub mod neutralizer;
pub mod ngram;
pub mod report;
pub mod stats;

pub use error::Error;
pub use ngram::{FrequencyTable, NGram, SimplifiedProfile};
