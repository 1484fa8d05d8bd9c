//! Pattern files, analysis reports, DOT export and the `mbqc` command line
//! on top of `mbqc-core`.

pub mod cli;
pub mod dot;
pub mod pattern_file;
pub mod report;

pub use cli::{run, Cli, CliError, Outcome};
pub use pattern_file::{parse, ParseError, PatternFile};
