use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {letter} is out of range for rank {rank}")]
    InvalidGenerator { letter: usize, rank: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("invalid premaniplex: {0}")]
    InvalidPremaniplex(String),
    #[error("invalid voltage operator: {0}")]
    InvalidOperator(String),
    #[error("premaniplex is not connected ({components} components)")]
    Disconnected { components: usize },
    #[error("flag {flag} is out of range ({flag_count} flags)")]
    FlagOutOfRange { flag: usize, flag_count: usize },
    #[error("word {word} does not stabilize flag {flag}")]
    NotStabilizing { word: String, flag: usize },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("coset enumeration exceeded the cap of {cap} cosets")]
    Capped { cap: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
