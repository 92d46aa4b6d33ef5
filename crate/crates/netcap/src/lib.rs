//! IO, file formats, the parallel harness and the command-line front-end
//! for [`netcap_core`].

pub mod cli;
pub mod config;
pub mod error;
pub mod parallel;
pub mod report;

pub use config::RunConfig;
pub use error::CliError;
pub use parallel::{sweep_parallel, validate_bounds_parallel};
