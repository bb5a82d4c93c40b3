use thiserror::Error;

/// Errors raised by the eta-product engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series is identically zero up to its truncation; it has no leading term")]
    ZeroLeadingTerm,

    #[error("exponent {0} is not a multiple of 1/24")]
    OffLattice(String),

    #[error("series has non-integer exponent {0}")]
    FractionalExponent(String),

    #[error("inverting a non-monomial exact series needs an explicit depth")]
    UnboundedInverse,

    #[error("invalid eta-product: {0}")]
    InvalidProduct(String),

    #[error("not an eta-product: {reason} ({confirmed} factors confirmed)")]
    NotAnEtaProduct { reason: String, confirmed: usize },

    #[error("not a modular form: {0}")]
    NotAForm(String),

    #[error("Kronecker symbol (0/0) is undefined")]
    KroneckerUndefined,

    #[error("order matrix rows are misaligned: {0}")]
    MisalignedRows(String),

    #[error("identity has no terms")]
    EmptyIdentity,

    #[error("precondition failed: {0}")]
    PrecondFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
