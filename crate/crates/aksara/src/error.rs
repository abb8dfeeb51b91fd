use std::fmt;
use std::io;

use thiserror::Error;

/// Where a data error was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub file: String,
    pub line: Option<usize>,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{}:{}", self.file, line),
            None => f.write_str(&self.file),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Bad flags or flag combinations. Exit code 1.
    #[error("{0}")]
    Usage(String),

    /// Bad input data. Exit code 2.
    #[error("{location}: {message}")]
    Data { location: Location, message: String },

    #[error("{file}: {source}")]
    Io {
        file: String,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub fn data(file: &str, line: Option<usize>, message: impl fmt::Display) -> Error {
        Error::Data {
            location: Location {
                file: file.to_string(),
                line,
            },
            message: message.to_string(),
        }
    }

    pub fn io(file: &str, source: io::Error) -> Error {
        Error::Io {
            file: file.to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Data { .. } | Error::Io { .. } => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
