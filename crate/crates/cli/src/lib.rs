//! Document format, built-in corpus and command surface of the `purity` tool.

pub mod commands;
pub mod corpus;
pub mod document;

pub use commands::{run_command, Outcome};
pub use document::{parse_document, to_toml, Diagnostic, Document};
