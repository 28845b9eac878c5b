//! File formats, CSV export and the command-line front end for
//! `framedual-core`.

pub mod cli;
pub mod error;
pub mod export;
pub mod formats;
pub mod report;

pub use error::CliError;
pub use report::RunReport;
