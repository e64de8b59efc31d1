//! Batch front end: parse a JSON job, build the requested algebra, run the
//! requested checks and emit a canonical JSON report.

pub mod error;
pub mod job;
pub mod run;

pub use error::{CliError, CliResult};
pub use job::{Check, Construction, Job, Options};
pub use run::{characters_csv, error_report, run, Outcome};
