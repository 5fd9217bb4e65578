//! File formats, JSON reports and the command implementations behind the
//! `algord` binary.

pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

pub use error::CliError;
pub use report::RunReport;
