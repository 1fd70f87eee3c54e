use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module of the crate.
///
/// Each variant maps to a stable one-word code (see [`Error::code`]) that the
/// CLI prints as the stderr prefix, so scripts can match on it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {num_vertices} vertices")]
    InvalidVertex { vertex: usize, num_vertices: usize },
    #[error("self-loop at vertex {0}")]
    InvalidEdge(usize),
    #[error("edge ({0}, {1}) is not an edge of the reference graph")]
    ForeignEdge(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    InvalidParameter(String),
    #[error(
        "parameter regime too small: log n = {log_n} gives d < 2; \
         need log n >= {min_log_n} = (100 ln 2)^2"
    )]
    RegimeTooSmall { log_n: f64, min_log_n: f64 },
    #[error("{0}")]
    TooLarge(String),
    #[error("{0}")]
    InvalidColoring(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidVertex { .. } => "InvalidVertex",
            Error::InvalidEdge(_) => "InvalidEdge",
            Error::ForeignEdge(..) => "ForeignEdge",
            Error::Parse { .. } => "ParseError",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::RegimeTooSmall { .. } => "RegimeTooSmall",
            Error::TooLarge(_) => "TooLarge",
            Error::InvalidColoring(_) => "InvalidColoring",
            Error::Io(_) => "IoError",
        }
    }
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
