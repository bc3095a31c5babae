//! Command-line front end for `nilmat`: group files in, JSON reports out.

pub mod codec;
pub mod commands;
pub mod gen;
pub mod groupfile;
pub mod render;
pub mod report;

pub use codec::ParseError;
pub use commands::{run_batch, run_command, run_file, run_verify, verify_report, Command, Flags, MethodFlag, Outcome};
pub use groupfile::{group_json, parse_group_file, parse_group_str, LoadError};
