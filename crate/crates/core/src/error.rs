use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex id {id} exceeds the supported maximum of {max}")]
    VertexIdOverflow { id: u64, max: u64 },

    #[error("vertex id {id} out of range for a graph with {num_vertices} vertices")]
    VertexOutOfRange { id: u64, num_vertices: usize },

    #[error("bad magic in binary edge list (expected \"SKPEL1\\0\\0\")")]
    BadMagic,

    #[error("truncated binary edge list: header promises {expected} edges, payload holds {actual}")]
    TruncatedPayload { expected: u64, actual: u64 },

    #[error("trailing bytes after binary edge list payload")]
    TrailingData,

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("graph with {num_vertices} vertices is too large for exhaustive matching search (limit {limit})")]
    TooLargeForExhaustiveSearch { num_vertices: usize, limit: usize },

    #[error("cannot aggregate, missing runs: {}", missing.join(", "))]
    MissingRuns { missing: Vec<String> },

    #[error("cannot aggregate an empty record set")]
    EmptyRecords,
}
