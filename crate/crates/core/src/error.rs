use thiserror::Error;

/// Errors produced by graph construction, generation and search routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("N*D must be even, got N={n}, D={d}")]
    DegreeParity { n: usize, d: usize },

    #[error("regular graph generation failed after {attempts} attempts")]
    GenerationFailed { attempts: u64 },

    #[error("no graph with lambda <= {threshold} found after {regenerations} regenerations")]
    LambdaRejected { threshold: f64, regenerations: u32 },

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("resample cap reached after {resamples} resamples with {violated} violated super-edges")]
    ResampleCapExceeded { resamples: u64, violated: usize },

    #[error("size overflow: {0}")]
    SizeOverflow(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
