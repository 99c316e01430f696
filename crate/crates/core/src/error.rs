use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different rings (variable count or base field differ).
    RingMismatch,
    DivisionByZero,
    /// The requested modulus is not a prime that fits a machine word.
    NotPrime(u64),
    /// A rational constant has a denominator divisible by the field characteristic.
    NotInvertible(String),
    Parse { pos: usize, msg: String },
    NotHomogeneous,
    /// Query above the degree at which a truncated basis was cut off.
    CapExceeded { degree: u32, cap: u32 },
    DegreeMismatch { expected: u32, found: u32 },
    NotZeroDimensional,
    NotSaturated,
    /// `X_0` is a zerodivisor on the coordinate ring (support meets `Z(X_0)`).
    SupportMeetsHyperplane,
    DuplicatePoint(usize),
    NotPrimary(usize),
    /// Per-point data was requested from a scheme built from a raw ideal.
    RawMode,
    NotArithmeticallyGorenstein,
    NotLocallyGorenstein,
    NotSubscheme,
    NotSocleElement,
    OutOfRange(String),
    MissingContext(String),
    RetryBudgetExhausted { seed: u64, attempts: u32 },
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "operands belong to different polynomial rings"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotPrime(p) => write!(f, "{p} is not a prime"),
            Error::NotInvertible(s) => write!(f, "{s} is not invertible in the base field"),
            Error::Parse { pos, msg } => write!(f, "parse error at {pos}: {msg}"),
            Error::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            Error::CapExceeded { degree, cap } => {
                write!(f, "degree {degree} exceeds the truncation cap {cap}")
            }
            Error::DegreeMismatch { expected, found } => {
                write!(f, "expected degree {expected}, found {found}")
            }
            Error::NotZeroDimensional => write!(f, "ideal does not define a 0-dimensional scheme"),
            Error::NotSaturated => write!(f, "ideal is not saturated"),
            Error::SupportMeetsHyperplane => write!(f, "support meets Z(X0)"),
            Error::DuplicatePoint(j) => write!(f, "component {j} repeats an earlier point"),
            Error::NotPrimary(j) => {
                write!(f, "local ideal of component {j} is not primary to its point")
            }
            Error::RawMode => write!(f, "operation needs component data (raw-mode scheme)"),
            Error::NotArithmeticallyGorenstein => {
                write!(f, "linking scheme is not arithmetically Gorenstein")
            }
            Error::NotLocallyGorenstein => write!(f, "scheme is not locally Gorenstein"),
            Error::NotSubscheme => write!(f, "scheme is not a subscheme of the linking scheme"),
            Error::NotSocleElement => write!(f, "direction is zero or not in the socle"),
            Error::OutOfRange(s) => write!(f, "out of range: {s}"),
            Error::MissingContext(s) => write!(f, "missing context: {s}"),
            Error::RetryBudgetExhausted { seed, attempts } => {
                write!(f, "retry budget of {attempts} attempts exhausted (seed {seed})")
            }
            Error::Invalid(s) => write!(f, "{s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
