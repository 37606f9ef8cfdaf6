use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("coefficient fields differ: {0} vs {1}")]
    CharacteristicMismatch(String, String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid ring specification: {0}")]
    InvalidRing(String),

    #[error("derivation `{derivation}` does not preserve the quotient: image of `{generator}` is not in it")]
    IllDefinedDerivation { derivation: String, generator: String },

    #[error("operation requires commuting derivations")]
    NonCommuting,

    #[error("operation requires a characteristic zero ring")]
    PositiveCharacteristic,

    #[error("argument must be nonzero: {0}")]
    ZeroArgument(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),
}
