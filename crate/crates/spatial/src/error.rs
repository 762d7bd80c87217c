use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed diagram JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("invalid diagram at {location}: {message}")]
    Invalid { location: String, message: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("coloring does not match the diagram: {0}")]
    Coloring(String),
    #[error("{0}")]
    Shape(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("value does not fit in 64 bits: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
