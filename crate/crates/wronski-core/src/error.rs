use alloc::string::String;
use core::fmt;

/// Failures reported by the library.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Parts are not weakly decreasing.
    InvalidPartition(String),
    /// Images do not form a bijection of `0..n`.
    InvalidPermutation(String),
    /// Two sizes that must agree do not.
    SizeMismatch { expected: usize, found: usize },
    /// A partition is not contained in another one.
    NotContained { inner: String, outer: String },
    /// The requested representation form needs square roots the scalar field lacks.
    FormMismatch(String),
    /// Input vectors are linearly dependent.
    RankDeficient,
    /// A Plücker vector has support outside its Schubert cell.
    OutsideCell(String),
    /// The `ν` entry of a Plücker vector is zero or not the normalized value.
    NotNormalized(String),
    /// A parameter takes a degenerate value.
    Degenerate(String),
    /// Distinct values were required.
    RepeatedParameter,
    /// Clustering could not be validated within the retry budget.
    RetryExhausted { gap: f64 },
    /// A numerical sanity check failed.
    Numerical(String),
    /// Any other malformed argument.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPartition(s) => write!(f, "invalid partition: {s}"),
            Error::InvalidPermutation(s) => write!(f, "invalid permutation: {s}"),
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {expected}, found {found}")
            }
            Error::NotContained { inner, outer } => {
                write!(f, "partition {inner} is not contained in {outer}")
            }
            Error::FormMismatch(s) => write!(f, "form mismatch: {s}"),
            Error::RankDeficient => write!(f, "input is rank deficient"),
            Error::OutsideCell(s) => write!(f, "span lies outside the closed cell: {s}"),
            Error::NotNormalized(s) => write!(f, "Plücker vector not normalized: {s}"),
            Error::Degenerate(s) => write!(f, "degenerate parameter: {s}"),
            Error::RepeatedParameter => write!(f, "parameters must be pairwise distinct"),
            Error::RetryExhausted { gap } => {
                write!(f, "eigenvalue clustering ambiguous after all retries (smallest gap {gap:e})")
            }
            Error::Numerical(s) => write!(f, "numerical check failed: {s}"),
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
