use thiserror::Error;

/// Crate-wide error type. Variants map one-to-one onto the failure modes of
/// the public operations; see the doc comment on each operation for which
/// variants it can produce.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("modulus must be monic of the stated degree")]
    BadModulus,
    #[error("explicit modulus over a proper extension base is not supported")]
    UnsupportedModulus,
    #[error("field of size {0}^{1} exceeds the supported bound (2^40)")]
    FieldTooLarge(u64, u32),
    #[error("gcd({n}, {q}) != 1")]
    NotCoprime { n: u64, q: u64 },
    #[error("no element of order {0} in this field")]
    NoSuchOrder(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field contexts")]
    ContextMismatch,

    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial must be irreducible for this operation")]
    ReducibleInput,
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,

    #[error("sequence is identically zero over the inspected window")]
    ZeroSequence,
    #[error("terms do not satisfy the stated recurrence")]
    NotAGSequence,
    #[error("period search exceeded {0} states")]
    PeriodSearchExceeded(u64),

    #[error("linear system is singular")]
    SingularSystem,
    #[error("map is singular (not invertible)")]
    SingularMap,
    #[error("element has order {got}, expected {want}")]
    WrongOrder { want: u64, got: u64 },
    #[error("map does not fix the unity group (witness index {0})")]
    NotFixing(u64),

    #[error("permutations have different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("vector length {0} does not match permutation degree {1}")]
    LengthMismatch(usize, usize),

    #[error("codeword length {0} does not match code length {1}")]
    WordLengthMismatch(usize, usize),
    #[error("generator does not divide x^n - 1")]
    NotAGenerator,
    #[error("brute-force automorphism search is capped at length 8, got {0}")]
    TooLarge(u64),

    #[error("enumeration space of {0} tuples exceeds the configured bound")]
    EnumerationTooLarge(u128),
    #[error("search budget exceeded after {nodes} nodes / {seconds:.1}s")]
    SearchBudgetExceeded { nodes: u64, seconds: f64 },
    #[error("group order exceeds the supported range (2^64)")]
    OrderTooLarge,
    #[error("lift exponent {t} must be coprime to m = {m}")]
    BadLiftExponent { t: u64, m: u64 },
    #[error("extension factor {f} does not divide (q-1)/e = {allowed}")]
    BadExtensionFactor { f: u64, allowed: u64 },
    #[error("twist scalar must satisfy nu^(n*f) = 1")]
    BadTwist,

    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
