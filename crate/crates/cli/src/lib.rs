//! File formats, renders and the command-line front end for `cmpcc`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod render;

pub use cli::{run, Exit};
pub use error::{CliError, ErrorKind};
pub use format::{parse_document, write_document, Document, ParseError, TilingDoc};
