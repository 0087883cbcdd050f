//! Model files, analyses and reports for the `sullivan` command.

pub mod parse;
pub mod report;
pub mod run;

pub use parse::{emit_canonical_model, parse_model, ModelFile, ParseError};
pub use report::{emit, parse_machine, Format, Report, Status};
pub use run::{run, CliError, Command, Denominator, Options};
