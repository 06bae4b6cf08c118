use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Zernike index: {0}")]
    InvalidIndex(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("differential realization is singular at r = 0")]
    Singularity,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate output: {0}")]
    DegenerateOutput(String),

    #[error("defect series is not invertible: |f_00| = {0:e}")]
    NonInvertibleDefect(f64),

    #[error("radial order {order} exceeds the supported limit {limit}")]
    Capability { order: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
