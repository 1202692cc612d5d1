use thiserror::Error;

/// Domain errors raised by the engine.
///
/// Parse failures of the text grammar live in [`crate::exprio::ParseError`];
/// everything here is a well-formed request that the engine refuses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("segments {0} and {1} are not linked")]
    NotLinked(String, String),
    #[error("Jacquet index {k} is out of range for degree {degree}")]
    OutOfRange { k: u32, degree: u32 },
    #[error("not decidable: {0}")]
    NotDecidable(String),
    #[error("factors of mixed kinds (Steinberg and Speh)")]
    MixedKinds,
    #[error("rank order violated: n = {n} exceeds m = {m}")]
    RankOrder { n: u32, m: u32 },
    #[error("invalid segment: {0}")]
    InvalidSegment(String),
    #[error("invalid cuspidal label: {0}")]
    InvalidLabel(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

impl Error {
    pub(crate) fn undecidable(what: impl Into<String>) -> Self {
        Error::NotDecidable(what.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
