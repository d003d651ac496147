//! Robustness of scale-free networks under node removal, and its
//! enhancement by adding links.
//!
//! - [`graph`]: undirected simple graph with stable node ids.
//! - [`metrics`]: efficiency, random-failure threshold, betweenness.
//! - [`generators`]: BA(m, N) graphs and edge-list files.
//! - [`attack`]: targeted attacks, random failures, collapse detection.
//! - [`enhance`]: link addition under the α power law and ERR/ELL/EHH.
//! - [`theory`]: mean-field prediction of κ after enhancement.
//! - [`harness`]: seeded sweeps with confidence intervals and CSV output.

pub mod attack;
pub mod cli;
pub mod enhance;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod rng;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{DegreeStats, Graph};
