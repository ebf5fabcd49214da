//! File formats, the parallel ensemble runner, the verification suites and
//! the `ctqw` command line on top of [`ctqw_core`].

pub mod cli;
pub mod error;
pub mod io;
pub mod runner;
pub mod verify;

pub use error::{CliError, Result};
