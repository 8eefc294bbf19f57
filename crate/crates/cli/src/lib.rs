//! Command-line front end for `dehn-core`: input handling, JSON and text
//! output, and the command runner behind the `dehn` binary.
//!
//! Every JSON object written to standard output carries a `schema_version`
//! field. Output is one JSON object per line, in input order.

pub mod app;
pub mod formats;
pub mod input;

pub use app::{run, Cli, Command, Format, RunConfig};
pub use input::Input;
