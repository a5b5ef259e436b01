//! Iterated Local Transitivity graphs: generation, exact metrics, spectra,
//! pursuit games and symmetry.

pub mod commands;
pub mod config;
pub mod error;
pub mod fit;
pub mod games;
pub mod generator;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod report;
pub mod seeds;
pub mod spectral;
pub mod svg;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
