//! Exact transversal and transversal-coalition computations on hypergraphs.
//!
//! A *transversal coalition* is a pair of disjoint vertex sets, neither of
//! which meets every edge, whose union does. A *trc-partition* splits the
//! vertex set into parts that are each either a one-vertex transversal or
//! have a coalition partner among the other parts; the transversal
//! coalition number `C_τ(H)` is the largest possible part count.
//!
//! The crate provides:
//! - [`hypercore`]: hypergraphs, vertex sets, partitions and labelings;
//! - [`transversal`]: the transversal number and minimal transversals;
//! - [`coalition`]: trc-partition validation and two exact `C_τ` solvers;
//! - [`families`]: generators for complete, bipartite, star, r-partite,
//!   linear path and linear cycle uniform hypergraphs;
//! - [`certificates`]: explicit maximum-order partitions for each family;
//! - [`report`]: the theorem verification grid and benchmark tables;
//! - [`format`]: the `.hg` text format, partition files and JSON documents.

pub mod certificates;
pub mod coalition;
pub mod error;
pub mod families;
pub mod format;
pub mod hypercore;
pub mod report;
pub mod transversal;

pub use error::{Error, Result};
pub use hypercore::{Hypergraph, Labeling, Partition, VertexId, VertexSet};
