use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed polynomial text; `offset` is a byte offset into the input.
    Syntax { offset: usize, message: String },
    /// A variable `x<index>` outside `x0..xn`.
    VariableOutOfRange { offset: usize, index: usize, n: usize },
    /// Operands live in polynomial rings with different variable counts.
    RingMismatch { left: usize, right: usize },
    /// `F(1, 0, …, 0) = 0`, so `(Uᵢ ∩ X)₁..ₙ` does not cover `X`.
    CoverViolated,
    WrongDegree { expected: i64, found: i64 },
    NotHomogeneous,
    /// A Gröbner computation or a truncated solve hit its configured cap.
    ResourceLimit { what: &'static str, cap: usize },
    /// An entry has a negative exponent on a variable not inverted on its open set.
    Inadmissible { index: String },
    /// A precondition on the geometric input (n, degree, smoothness) does not hold.
    Hypothesis(String),
    InvalidInput(String),
    /// An identity that exact arithmetic guarantees did not hold.
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { offset, message } => {
                write!(f, "syntax error at offset {offset}: {message}")
            }
            Error::VariableOutOfRange { offset, index, n } => write!(
                f,
                "variable x{index} at offset {offset} is out of range (variables are x0..x{n})"
            ),
            Error::RingMismatch { left, right } => write!(
                f,
                "polynomials in {left} and {right} variables cannot be combined"
            ),
            Error::CoverViolated => {
                f.write_str("F vanishes at [1:0:...:0]; the cover U_1..U_n does not cover X")
            }
            Error::WrongDegree { expected, found } => {
                write!(f, "expected degree {expected}, found {found}")
            }
            Error::NotHomogeneous => f.write_str("polynomial is not homogeneous"),
            Error::ResourceLimit { what, cap } => {
                write!(f, "resource limit exceeded in {what} (cap {cap})")
            }
            Error::Inadmissible { index } => {
                write!(f, "entry at index {index} inverts a variable outside its open set")
            }
            Error::Hypothesis(msg) => write!(f, "hypothesis failure: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Inconsistent(msg) => write!(f, "internal consistency check failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
