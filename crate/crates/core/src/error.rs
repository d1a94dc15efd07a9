//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pole at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("accuracy target not met: error estimate {estimate:e} exceeds {target:e}")]
    Accuracy { estimate: f64, target: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("sampling radius {radius} too close to a zero (modulus ratio {ratio:e})")]
    Radius { radius: f64, ratio: f64 },

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("range mismatch: {0}")]
    RangeMismatch(String),

    #[error("no admissible translation in [{lo}, {hi}]")]
    EmptyWindow { lo: f64, hi: f64 },

    #[error("unit contour around t = {t_center} did not close within the expansion budget")]
    OpenContour { t_center: f64 },

    #[error("checksum mismatch: manifest {expected}, records {actual}")]
    Checksum { expected: String, actual: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn pole(s: num_complex::Complex64) -> Self {
        Error::Pole { re: s.re, im: s.im }
    }
}
