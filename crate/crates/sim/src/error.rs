use std::path::PathBuf;

use grand_core::{CodeError, DecoderError, StableError};

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("unknown decoder `{name}`; valid names: {valid}")]
    UnknownDecoder { name: String, valid: String },
    #[error("unknown code family `{0}`; expected `crc` or `capolar`")]
    UnknownFamily(String),
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("code construction failed: {0}")]
    Code(#[from] CodeError),
    #[error("decoder configuration rejected: {0}")]
    Decoder(#[from] DecoderError),
    #[error("noise model failed: {0}")]
    Stable(#[from] StableError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl SimError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SimError::Io {
            path: path.into(),
            source,
        }
    }
}
