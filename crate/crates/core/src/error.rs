use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("cannot calibrate medium prefactor: {0}")]
    Calibration(String),

    #[error("susceptibility denominator vanishes at δ/Γ = {delta} (|den| = {modulus:e})")]
    SingularSusceptibility { delta: f64, modulus: f64 },

    #[error("spectral grid too narrow: span {span:e} rad/s < {required:e} rad/s")]
    GridTruncation { span: f64, required: f64 },

    #[error("spectral grid too coarse: dω {domega:e} rad/s > {limit:e} rad/s")]
    GridResolution { domega: f64, limit: f64 },

    #[error("unknown figure id `{0}`")]
    UnknownFigure(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by the numerical setup (grid, singular
    /// parameter sets) rather than by malformed input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::SingularSusceptibility { .. }
                | Error::GridTruncation { .. }
                | Error::GridResolution { .. }
        )
    }
}
