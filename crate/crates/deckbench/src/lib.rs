//! File formats, parallel search and the command line on top of
//! [`deckbench_core`].

pub mod cli;
pub mod deckfile;
pub mod error;
pub mod parallel;
pub mod report;

pub use cli::run;
pub use error::CliError;
