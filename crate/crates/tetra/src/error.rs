use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed PGM: {reason}")]
    MalformedPgm { path: PathBuf, reason: String },
    #[error("{path}: unsupported depth (maxval {maxval}); only 8-bit images are supported")]
    UnsupportedDepth { path: PathBuf, maxval: u32 },
    #[error("{path}: cannot decode PNG: {reason}")]
    Png { path: PathBuf, reason: String },
    #[error("{path}: unsupported image format (expected .pgm or .png)")]
    UnknownFormat { path: PathBuf },
    #[error(transparent)]
    Image(#[from] tetra_core::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("empty corpus: no .pgm or .png files in {0}")]
    EmptyCorpus(PathBuf),
    #[error("{image_id}: {detail}")]
    Data { image_id: String, detail: String },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: 1 usage, 2 I/O, 3 data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Io { .. } | Error::EmptyCorpus(_) => 2,
            Error::Csv { source, .. } if source.is_io_error() => 2,
            _ => 3,
        }
    }
}
