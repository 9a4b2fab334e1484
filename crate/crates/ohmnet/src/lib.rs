//! Electrical networks on finite weighted multigraphs.
//!
//! Edges are bundles of unit resistors: an edge with multiplicity `m` is `m`
//! parallel one-ohm resistors, i.e. conductance `m` between its endpoints.
//! On top of that model the crate provides
//!
//! * effective resistance and full voltage profiles ([`electrical`]),
//! * the dyadic-band isoperimetric functional `L_v` that upper-bounds
//!   resistance, with exact enumeration and heuristic search ([`iso`]),
//! * continuous-time random walks with exponential edge clocks: hitting
//!   times, commute times and their identity with resistance ([`walks`]),
//! * seeded, reproducible experiments: bound verification, counterexample
//!   scaling fits, 2D bond percolation, conjecture probes ([`experiments`]).

use thiserror::Error;

pub mod electrical;
pub mod experiments;
pub mod ext;
pub mod graph;
pub mod iso;
mod linalg;
pub mod report;
pub mod walks;

pub use ext::ExtReal;
pub use graph::{Graph, VertexSet};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertices {0} and {1} are in different components")]
    Disconnected(usize, usize),
    #[error("solver did not converge: relative residual {residual:.3e} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },
    #[error("graph has {size} vertices, above the exact-mode gate of {gate}; use heuristic mode")]
    ExactGate { size: usize, gate: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
