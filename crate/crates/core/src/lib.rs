//! Joint trajectory and dynamic time-splitting optimization for a UAV
//! carrying a backscatter device (UB) that relays a ground base station to
//! an end user.
//!
//! The crate is organized bottom-up:
//!
//! * [`model`]: distances, Doppler factor, channel gains, energies and rates.
//! * [`problem`]: the normalized genome, decoding, constraints and fitness.
//! * [`ga`] and [`pso`]: the two metaheuristic solvers, sharing
//!   [`report::SolverReport`] as their output.

pub mod error;
pub mod ga;
pub mod model;
pub mod operators;
pub mod problem;
pub mod pso;
pub mod report;

#[cfg(test)]
pub(crate) mod fixtures;

pub use error::{EncodingError, ModelError, SolverError};
