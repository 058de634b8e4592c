//! Command-line front end: JSON inputs, structured JSON reports and exit
//! codes (0 success, 2 not positive real, 1 usage or operational failure).

mod args;
mod input;
mod report;
mod run;

pub use args::{Cli, Command};
pub use input::{form_to_json, function_to_json, parse_input, parse_input_str, Input};
pub use run::{run, JobKind, JobSpec, Outcome, EXIT_FAILURE, EXIT_NOT_POSITIVE_REAL, EXIT_OK};
