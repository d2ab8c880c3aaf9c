//! Subgraph statistics for hyperedge-sampled networks.
//!
//! Many relational datasets (coauthorships, movie casts, transactions) are
//! collected by sampling *interactions* rather than nodes. This crate treats
//! the observed network as an ordered sequence of hyperedges and provides:
//!
//! - edge-colored subgraph frequencies that distinguish how a motif was
//!   assembled from interactions (e.g. a triangle formed by one, two, or
//!   three hyperedges), together with colorless and total-copy variants
//!   ([`count`]);
//! - degree-filtered frequencies, which model the removal of low-degree
//!   nodes, and calculators for how much filtering a statistic tolerates
//!   before its large-sample behavior changes ([`stability`]);
//! - without-multiplicity statistics on the binarized graph, including the
//!   count of distinct k-node interactions ([`count::unique_k_count`]);
//! - incomplete (sampled-tuple) estimators for all U-statistic frequencies,
//!   and subsampling-based variance estimates with normal and delta-method
//!   confidence intervals ([`inference`]);
//! - a synthetic hyperedge generator for calibration and coverage
//!   experiments ([`generator`]), plus the experiment drivers themselves
//!   ([`experiments`]);
//! - slow, definition-first reference counters used to validate every
//!   optimized path ([`oracle`]).
//!
//! The `hypermotif` binary exposes the same functionality as subcommands
//! (`count`, `infer`, `compare`, `simulate`, `coverage`, `stability`); the
//! `examples/` directory has one runnable example per capability.

pub mod count;
pub mod error;
pub mod experiments;
pub mod generator;
pub mod inference;
pub mod oracle;
pub mod pattern;
pub mod sample;
pub mod seed;
pub mod stability;
pub mod statistic;

pub use error::{Error, Result};
pub use pattern::{BuiltinPattern, ColoredPattern, ColorlessPattern, PatternStats};
pub use sample::{build_sample, binarize, hyperdegrees, BinaryGraph, DegreeIndex, Hyperedge, HypergraphSample, VertexId};
