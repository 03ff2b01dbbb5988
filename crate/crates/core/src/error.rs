use thiserror::Error;

/// Errors shared by every engine in this crate.
///
/// Variants split into three broad families: invalid inputs (bad primes,
/// mismatched contexts, malformed tuples), resource guards (table and
/// state-size caps), and numerical-consistency failures (rounding residuals
/// or orbit counts that reveal inconsistent data).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be >= 1")]
    BadDegree,
    #[error("field of size {q} exceeds the dlog-table bound 2^20")]
    FieldTooLarge { q: u128 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete logarithm of zero is undefined")]
    DlogOfZero,
    #[error("operands belong to different field contexts")]
    ContextMismatch,
    #[error("no embedding: source field is not a subfield of the target")]
    NoEmbedding,
    #[error("element index {idx} out of range for a field of size {q}")]
    ElementOutOfRange { idx: u64, q: u64 },

    #[error("q = {q} is not congruent to 1 mod m = {m}")]
    BadCongruence { q: u64, m: u64 },
    #[error("diagonal coefficient c_{0} is zero")]
    ZeroCoefficient(usize),
    #[error("invalid exponent tuple: {0}")]
    BadTuple(String),

    #[error("enumeration needs {estimate} representatives, above the cap of {cap}")]
    EnumerationCapExceeded { estimate: u128, cap: u64 },
    #[error("state of {amps} amplitudes exceeds the 2^24 guard")]
    StateTooLarge { amps: u128 },
    #[error("{t} ancilla qubits exceed the supported maximum of 16")]
    AncillaTooLarge { t: u32 },

    #[error("rounding residual {residual:e} exceeds the tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("point count reconstructed from roots is negative")]
    NegativeCount,
    #[error("orbit count b_{d} is not an integer")]
    NonIntegralOrbitCount { d: usize },
    #[error("orbit count b_{d} = {value} is negative")]
    NegativeOrbitCount { d: usize, value: String },

    #[error("register {reg} has dimension {found}, expected {expected}")]
    DimensionMismatch { reg: usize, found: usize, expected: usize },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("polynomial on line {line} is not homogeneous")]
    NonHomogeneous { line: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
