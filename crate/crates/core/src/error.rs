use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid automaton: {0}")]
    InvalidDfa(String),

    #[error("automaton is not in canonical form")]
    NotCanonical,

    #[error("{what} exceeds the configured cap of {cap}")]
    ResourceLimit { what: String, cap: usize },

    #[error("rejection sampling at k={k} gave up after {attempts} attempts")]
    SamplingFailed { k: usize, attempts: usize },

    #[error("no witness: {0}")]
    NoWitness(String),

    #[error("search exhausted: {0}")]
    Exhausted(String),

    #[error("unknown instance `{0}`")]
    UnknownInstance(String),

    #[error("unknown concept `{0}`")]
    UnknownConcept(String),

    #[error("contradictory labels for instance `{0}`")]
    Contradiction(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("series diverges: tail ratio {ratio} >= 1")]
    Diverges { ratio: f64 },

    #[error("decode error: {0}")]
    Decode(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Coarse classification used by front ends to choose exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Resource,
    Outcome,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ResourceLimit { .. } | Error::SamplingFailed { .. } => ErrorKind::Resource,
            Error::NoWitness(_) | Error::Exhausted(_) => ErrorKind::Outcome,
            _ => ErrorKind::Input,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
