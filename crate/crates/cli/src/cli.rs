//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{self, BuildKind, OracleTarget, RenderFormat};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "cmpcc",
    version,
    about = "Comparison decision trees and comparison protocols: measures, builders, verifiers, oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the complexity measures of a table, matrix or artifact.
    Analyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// Build a tree (from a table) or a tiling or protocol (from a matrix).
    Build {
        #[arg(value_enum)]
        kind: BuildArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check an artifact against a function on every input.
    Verify {
        /// Tree, protocol or tiling document.
        #[arg(long)]
        artifact: PathBuf,
        /// Truth table (for trees) or matrix (for protocols and tilings).
        #[arg(long)]
        input: PathBuf,
        /// Largest protocol arity to simulate exhaustively.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Run a brute-force oracle and compare it with the fast algorithm.
    Oracle {
        #[arg(value_enum)]
        target: OracleArg,
        #[arg(long)]
        input: PathBuf,
        /// Arity cap for dtree-depth, cell cap for min-partition and chi-geom.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Count functions by number of constant blocks.
    Count {
        #[arg(long)]
        n: u32,
        /// Largest arity to enumerate exhaustively.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Draw a tiling, or the minimum tiling of a matrix.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "ascii")]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the matrix file of a named function.
    Generate {
        /// parity, checkerboard, greater_equal, equality, constant0 or constant1.
        generator: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BuildArg {
    Tree,
    TrivialTree,
    Tiling,
    Protocol,
    TrivialProtocol,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OracleArg {
    DtreeDepth,
    MinPartition,
    ChiGeom,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Ascii,
    Svg,
}

impl From<BuildArg> for BuildKind {
    fn from(a: BuildArg) -> Self {
        match a {
            BuildArg::Tree => BuildKind::Tree,
            BuildArg::TrivialTree => BuildKind::TrivialTree,
            BuildArg::Tiling => BuildKind::Tiling,
            BuildArg::Protocol => BuildKind::Protocol,
            BuildArg::TrivialProtocol => BuildKind::TrivialProtocol,
        }
    }
}

impl From<OracleArg> for OracleTarget {
    fn from(a: OracleArg) -> Self {
        match a {
            OracleArg::DtreeDepth => OracleTarget::DtreeDepth,
            OracleArg::MinPartition => OracleTarget::MinPartition,
            OracleArg::ChiGeom => OracleTarget::ChiGeom,
        }
    }
}

impl From<FormatArg> for RenderFormat {
    fn from(a: FormatArg) -> Self {
        match a {
            FormatArg::Ascii => RenderFormat::Ascii,
            FormatArg::Svg => RenderFormat::Svg,
        }
    }
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exit {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Exit {
    fn from_parts(stdout: String, failure: Option<CliError>) -> Self {
        match failure {
            None => Exit {
                stdout,
                stderr: String::new(),
                code: 0,
            },
            Some(e) => Exit {
                stdout,
                stderr: format!("{e}\n"),
                code: e.exit_code(),
            },
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                return Exit::from_parts(e.to_string(), None);
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            return Exit::from_parts(String::new(), Some(CliError::usage(first)));
        }
    };
    match dispatch(cli.command) {
        Ok((stdout, failure)) => Exit::from_parts(stdout, failure),
        Err(e) => Exit::from_parts(String::new(), Some(e)),
    }
}

fn dispatch(command: Command) -> Result<(String, Option<CliError>), CliError> {
    let ok = |s: String| Ok((s, None));
    match command {
        Command::Analyze { input } => ok(commands::analyze(&commands::read_document(&input)?)?),
        Command::Build {
            kind,
            input,
            output,
        } => {
            let text = commands::build(kind.into(), commands::read_document(&input)?)?;
            ok(commands::emit(text, output.as_deref())?)
        }
        Command::Verify {
            artifact,
            input,
            cap,
        } => {
            let a = commands::read_document(&artifact)?;
            let f = commands::read_document(&input)?;
            let r = commands::verify(a, f, cap)?;
            Ok((r.text, r.failure))
        }
        Command::Oracle { target, input, cap } => {
            let r = commands::oracle(target.into(), commands::read_document(&input)?, cap)?;
            Ok((r.text, r.failure))
        }
        Command::Count { n, cap } => {
            let r = commands::count(n, cap)?;
            Ok((r.text, r.failure))
        }
        Command::Render {
            input,
            format,
            output,
        } => {
            let text = commands::render(commands::read_document(&input)?, format.into())?;
            ok(commands::emit(text, output.as_deref())?)
        }
        Command::Generate {
            generator,
            n,
            output,
        } => ok(commands::emit(
            commands::generate_matrix(&generator, n)?,
            output.as_deref(),
        )?),
    }
}
