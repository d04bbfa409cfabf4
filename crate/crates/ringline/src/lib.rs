//! Ring-spec parser, text formats, JSON reports and the `ringline` command
//! line on top of `ringline-core`.

pub mod cli;
pub mod formats;
pub mod parse;
pub mod report;

pub use formats::table::FsTables;
pub use parse::{parse_ring_spec, ParseError};
