//! Exact randomized tests for generic rigidity of graphs.
//!
//! Local rigidity is decided by the rank of a rigidity matrix at random
//! coordinates over a large prime field, global rigidity by the nullity of a
//! random stress matrix, and redundant rigidity by the support of the stress
//! space. On top of these sit constructors for k-chains, k-rings, conings and
//! chain attachments, closed-form predicates for k-chains and complete
//! bipartite graphs, and exhaustive verification sweeps.

#![allow(clippy::int_plus_one, clippy::needless_range_loop)]

pub mod analysis;
pub mod audit;
pub mod classifier;
pub mod connectivity;
pub mod construct;
pub mod error;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod rigidity;
pub mod verify;

pub use analysis::{analyze, is_gpr, AnalysisConfig, RedundancyMethod, RigidityReport, Verdict};
pub use construct::{AttachmentSpec, ChainSpec};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use graph::Graph;
pub use matrix::FieldMatrix;
