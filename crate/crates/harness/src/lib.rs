//! Experiment engine for the UB trajectory and time-splitting solvers:
//! scenario files, seeded campaigns and sweeps, the random-search and grid
//! baselines, and solution export.

pub mod campaign;
pub mod config;
pub mod error;
pub mod export;
pub mod oracle;
pub mod sweep;

pub use campaign::{run_campaign, run_one, run_solver, RunArtifact, RunFailure, RunOutcome, SolverKind};
pub use config::{load_config, save_config, ScenarioConfig};
pub use error::HarnessError;
pub use oracle::grid_oracle;
pub use sweep::{run_sweep, run_sweep_with, SweepParam, SweepSpec, SweepTable};
pub use ubopt_core::{ga, model, operators, problem, pso, report};
