use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("resource limit exceeded: {what} = {requested} > cap {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("element {0} lies outside the enumerated ball")]
    OutOfRange(String),

    #[error("index {index} is below the sequence start {start}")]
    IndexBelowStart { index: usize, start: usize },

    #[error("invalid rib payload {payload}: {reason}")]
    InvalidRib {
        payload: String,
        reason: &'static str,
    },

    #[error("invalid geodesic ray: {0}")]
    InvalidRay(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
