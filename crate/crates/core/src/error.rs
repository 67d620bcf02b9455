use std::path::PathBuf;

/// Errors produced by the analysis library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: malformed record: {msg}")]
    MalformedRecord { line: usize, msg: String },

    #[error("duplicate document id {id:?} (line {line})")]
    DuplicateId { id: String, line: usize },

    #[error("dictionary line {line}: {msg}")]
    DictionaryParse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("word {word:?} does not occur in the selection")]
    WordAbsent { word: String },

    #[error("pagerank did not converge after {iterations} iterations (L1 residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("graph is empty after singleton removal")]
    EmptyGraph,

    #[error("curves are defined over different r grids")]
    MismatchedGrids,
}

pub type Result<T> = std::result::Result<T, Error>;
