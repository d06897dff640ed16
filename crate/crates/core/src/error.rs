use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "invalid degrees d={d}, d'={dprime}: this requires d > d' >= 1; for d' >= d the \
         generators satisfy Koszul syzygies in degree d+d', so the products f_i*m_j can \
         never be independent and the method does not apply"
    )]
    InvalidDegrees { d: u32, dprime: u32 },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("negative input where a non-negative value is required")]
    NegativeInput,

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("interval refinement exhausted the precision cap of 2^-{cap_bits}")]
    PrecisionExhausted { cap_bits: u32 },

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: u32, max: u32 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} does not fit in 32 bits")]
    FieldTooLarge(u64),

    #[error("dim R'_{{d+d'}} = {numerator} is not divisible by dim R'_{{d'}} = {denominator}")]
    NotDivisible { numerator: String, denominator: String },

    #[error("selection mismatch: {0}")]
    SelectionMismatch(String),

    #[error("unknown table row n={0}; rows are 16..=21")]
    UnknownRow(u32),

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_degrees(d: u32, dprime: u32) -> Result<()> {
    if dprime >= 1 && d > dprime {
        Ok(())
    } else {
        Err(Error::InvalidDegrees { d, dprime })
    }
}
