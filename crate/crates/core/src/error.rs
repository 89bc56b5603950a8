use thiserror::Error;

/// Errors raised by the arithmetic kernels, the registry and the DSL.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("precision exponent must be at least 1")]
    ZeroPrecision,
    #[error("{p}^{digits} does not fit in 127 bits")]
    CapacityExceeded { p: u64, digits: u32 },
    #[error("{0} is not invertible modulo p")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("insufficient precision: operand is zero only modulo {p}^{available}")]
    InsufficientPrecision { p: u64, available: i64 },
    #[error("congruence modulo p^{t} is undecidable: difference known only modulo p^{available}")]
    Undecidable { t: i64, available: i64 },
    #[error("mismatched primes {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("negative lower index {0}")]
    NegativeIndex(i64),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("Bernoulli index {m} is irregular at p = {p}: (p-1) divides it")]
    IrregularIndex { m: u64, p: u64 },
    #[error("Bernoulli index {0} is odd")]
    OddIndex(u64),
    #[error("Bernoulli index {n} exceeds the exact-table cap {cap}")]
    BernoulliCap { n: u64, cap: u64 },
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("prime {p} exceeds the oracle cap {cap}")]
    OracleCap { p: u64, cap: u64 },
    #[error("syntax error at line {line}, column {column} (offset {offset}): {message}")]
    Syntax {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("evaluation error: {0}")]
    Eval(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for the precision-related failures that a retry at higher
    /// working precision can resolve.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::InsufficientPrecision { .. }
                | Error::Undecidable { .. }
                | Error::CapacityExceeded { .. }
        )
    }
}
