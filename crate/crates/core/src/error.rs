use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A numeric input was non-finite or outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid grid, medium, scan or scenario parameters.
    #[error("configuration error: {0}")]
    Config(String),

    /// Requested target slope cannot be reached by a symmetric doublet.
    #[error("target slope {target:e} s is unattainable; attainable range is [{min:e}, {max:e}] s")]
    Range { target: f64, min: f64, max: f64 },

    #[error("gain overflow: peak intensity coupling {peak:.3} exceeds cap {cap:.3}")]
    GainOverflow { peak: f64, cap: f64 },

    /// Pulse features fall outside the sampled window.
    #[error("windowing error: {0}")]
    Windowing(String),

    #[error("ambiguous peak: {0}")]
    Ambiguous(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
