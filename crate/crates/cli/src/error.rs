use std::fmt;

use crate::format::ParseError;

/// Failure classes, each with a fixed exit code and message prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Io,
    /// The artifact does not compute the function, or an oracle disagrees.
    Verify,
    /// Artifact and function have different arities.
    Mismatch,
    Parse,
    /// Well-formed input with values the library rejects.
    Invalid,
    Cap,
    Internal,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage | ErrorKind::Io | ErrorKind::Internal => 1,
            ErrorKind::Verify | ErrorKind::Mismatch => 2,
            ErrorKind::Parse | ErrorKind::Invalid => 3,
            ErrorKind::Cap => 4,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ErrorKind::Usage => "usage",
            ErrorKind::Io => "io",
            ErrorKind::Verify => "verify",
            ErrorKind::Mismatch => "mismatch",
            ErrorKind::Parse => "parse",
            ErrorKind::Invalid => "invalid",
            ErrorKind::Cap => "cap",
            ErrorKind::Internal => "internal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Usage, message)
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }
}

/// Always a single line: `error[<tag>]: <message>`.
impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_line = self.message.replace(['\n', '\r'], " ");
        write!(f, "error[{}]: {}", self.kind.tag(), one_line)
    }
}

impl std::error::Error for CliError {}

impl From<cmpcc::Error> for CliError {
    fn from(e: cmpcc::Error) -> Self {
        use cmpcc::Error as E;
        let kind = match &e {
            E::CapExceeded { .. } => ErrorKind::Cap,
            E::ArityMismatch { .. } => ErrorKind::Mismatch,
            E::InvalidTiling(_) | E::IncorrectProtocol { .. } => ErrorKind::Verify,
            E::NonRectangularFace { .. } => ErrorKind::Internal,
            _ => ErrorKind::Invalid,
        };
        Self::new(kind, e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self::new(ErrorKind::Parse, e.to_string())
    }
}
