use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An enclosure straddles a half-integer boundary, so the nearest
    /// integer cannot be determined at the current precision.
    #[error("enclosure is ambiguous at {prec} bits; refine and retry")]
    AmbiguousAtPrecision { prec: u32 },

    /// Certification failed even at the maximum working precision.
    #[error("precision exhausted at {max} bits while {context}")]
    PrecisionExhausted { max: u32, context: String },

    /// The reduction walked through all convergent candidates without
    /// certifying a positive epsilon.
    #[error("epsilon never certified positive after {attempts} convergents")]
    EpsilonNeverPositive { attempts: usize },

    /// Input to a continued-fraction expansion turned out to be rational.
    #[error("continued fraction of a rational terminates; irrational input required")]
    RationalInput,

    #[error("no crossing point: the inequality never flips for the given coefficient")]
    NoCrossing,

    #[error("logarithm of a non-positive enclosure")]
    NonPositiveLog,

    #[error("square root of a negative enclosure")]
    NegativeSqrt,

    #[error("unsupported gap pair ({0}, {1})")]
    UnsupportedGapPair(u64, u64),

    #[error("zeckendorf representation requires N >= 1")]
    ZeroZeckendorf,

    #[error("division by an enclosure containing zero")]
    DivisionByZero,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
