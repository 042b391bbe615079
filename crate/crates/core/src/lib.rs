//! Exact symbolic covariance matrices of linear structural equation models
//! on mixed graphs, cyclic ones included, computed from the 1-connections
//! of the Coates digraph of `(I - Lambda)^T`.
//!
//! Modules:
//! - [`graph`]: mixed graphs, cycles, paths, 1-connections, generators.
//! - [`poly`]: sparse rational polynomials in the `l`/`w` parameters.
//! - [`covariance`]: determinant, adjugate and covariance via 1-connections,
//!   with trek-rule, fraction-free elimination and power-series cross-checks.
//! - [`ident`]: generic identifiability through the Jacobian rank.
//! - [`ideal`]: support pruning and kernel search for vanishing-ideal elements.
//! - [`bench`]: timing harness comparing the 1-connection and elimination methods.

pub mod graph;
pub mod poly;
pub mod bench;
pub mod covariance;
pub mod ident;
pub mod ideal;
mod deadline;

pub use deadline::{Deadline, Timeout};
