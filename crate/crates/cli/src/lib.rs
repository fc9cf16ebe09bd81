//! Command-line front end for the `rabi-core` solvers: figure presets,
//! coupling sweeps and method comparisons, emitted as deterministic CSV.

pub mod args;
pub mod config;
pub mod csv;
pub mod run;

pub use config::{Command, ConfigError, Coupling, RunConfig};
pub use run::{run, run_compare, run_dynamics, run_spectrum, Report};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const INVALID_CONFIG: u8 = 2;
    pub const NOT_CONVERGED: u8 = 3;
}
