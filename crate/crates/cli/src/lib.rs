//! Text specs, verification suites and report output behind the `qb` binary.

pub mod config;
pub mod error;
pub mod spec_text;
pub mod suite;

pub use error::{CliError, CliResult};
pub use spec_text::{parse_spec, render};
pub use suite::{
    emit_table, run_suite, Entry, Format, Status, SuiteName, SuiteOptions, SuiteReport, TableFamily,
};
