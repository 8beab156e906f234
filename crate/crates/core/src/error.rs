use thiserror::Error;

use crate::word::VertexAddress;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("letter {0} is not in the alphabet {{0,1,2}}")]
    InvalidLetter(u8),

    #[error("word length {len} exceeds the configured bound {max}")]
    WordTooLong { len: usize, max: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("no value assigned to vertex {0}")]
    IncompleteAssignment(VertexAddress),

    #[error("harmonic function is constant")]
    ConstantHarmonic,

    #[error("coefficients do not define a positive measure (ab+bc+ca = {cone})")]
    NotPositive { cone: String },

    #[error("word {0:?} contains the letter 0")]
    ContainsLetterZero(String),

    #[error("requested depth {requested} exceeds the limit {max}")]
    DepthLimit { requested: usize, max: usize },

    #[error("point at unit-disk radius {radius} lies outside the closed disk")]
    OutsideDisk { radius: f64 },

    #[error("seed at unit-disk radius {radius} is not on the boundary circle")]
    OffCircle { radius: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
