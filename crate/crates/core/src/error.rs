use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree {0} exceeds the supported maximum of 65536 points")]
    DegreeTooLarge(usize),

    #[error("{what} too large: {size} exceeds the bound {bound}")]
    TooLarge {
        what: String,
        size: u128,
        bound: u128,
    },

    #[error("generator {0} is not a member of the ambient group")]
    NotMember(String),

    #[error("group order overflows 128 bits")]
    OrderOverflow,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("no generators")]
    NoGenerators,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn too_large(what: impl Into<String>, size: u128, bound: u128) -> Self {
        Error::TooLarge {
            what: what.into(),
            size,
            bound,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
