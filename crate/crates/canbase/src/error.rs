//! Crate-wide error type.

use std::fmt;

/// Errors raised anywhere in the crate.
///
/// Structural validation errors carry the offending cell or index (1-based,
/// matching the I/O convention). `InvariantViolation` is reserved for checks
/// that should hold mathematically: it aborts the computation with a
/// diagnostic rather than silently producing wrong output.
#[derive(Debug)]
pub enum Error {
    /// Cartan matrix is not symmetric; names the violated cell.
    NonSymmetric { row: usize, col: usize },
    /// A diagonal Cartan entry differs from 2.
    BadDiagonal { index: usize },
    /// An off-diagonal Cartan entry is positive.
    PositiveOffDiagonal { row: usize, col: usize },
    /// Vector lengths disagree with the rank of the datum.
    LengthMismatch { expected: usize, got: usize },
    /// Argument outside the defined range (e.g. binomial with k > n).
    OutOfRange(String),
    /// A power-series expansion in v^-1 does not have integer coefficients.
    NotExpandable(String),
    /// A coefficient expected to be a Laurent polynomial is a true fraction.
    NotPolynomial(String),
    /// An operation would leave the built range of weight spaces.
    WeightOutOfRange(String),
    /// Two elements of different weights were combined.
    WeightMismatch { left: Vec<u32>, right: Vec<u32> },
    /// An element does not lie in the Z[v^-1]-lattice spanned by the basis.
    NotInLattice(String),
    /// String transport requires a string bottom (t_i = 0).
    NotIStringBottom(String),
    /// A requested weight was never built.
    NoSuchWeight(Vec<u32>),
    /// A highest-weight bound d_i < 1.
    BadBound { index: usize },
    /// The basis correction loop exceeded its iteration bound.
    NonConvergence(String),
    /// A mathematically guaranteed invariant failed; the payload is a
    /// machine-readable diagnostic.
    InvariantViolation(String),
    /// Unknown export format.
    UnknownFormat(String),
    /// A cache entry failed its integrity check.
    CorruptEntry(String),
    /// Bad CLI / job configuration.
    Config(String),
    /// Text that does not parse as a coefficient or datum.
    Parse(String),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonSymmetric { row, col } => {
                write!(f, "cartan matrix not symmetric at ({row},{col})")
            }
            Error::BadDiagonal { index } => {
                write!(f, "cartan diagonal entry a[{index}][{index}] != 2")
            }
            Error::PositiveOffDiagonal { row, col } => {
                write!(f, "positive off-diagonal cartan entry at ({row},{col})")
            }
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::OutOfRange(m) => write!(f, "out of range: {m}"),
            Error::NotExpandable(m) => write!(f, "no integral v^-1 expansion: {m}"),
            Error::NotPolynomial(m) => write!(f, "not a Laurent polynomial: {m}"),
            Error::WeightOutOfRange(m) => write!(f, "weight out of built range: {m}"),
            Error::WeightMismatch { left, right } => {
                write!(f, "weight mismatch: {left:?} vs {right:?}")
            }
            Error::NotInLattice(m) => write!(f, "element not in the v^-1 lattice: {m}"),
            Error::NotIStringBottom(m) => write!(f, "not an i-string bottom: {m}"),
            Error::NoSuchWeight(w) => write!(f, "weight {w:?} not built"),
            Error::BadBound { index } => write!(f, "bound d[{index}] must be >= 1"),
            Error::NonConvergence(m) => write!(f, "correction loop did not converge: {m}"),
            Error::InvariantViolation(m) => write!(f, "invariant violation: {m}"),
            Error::UnknownFormat(m) => write!(f, "unknown format: {m}"),
            Error::CorruptEntry(m) => write!(f, "corrupt cache entry: {m}"),
            Error::Config(m) => write!(f, "configuration error: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Json(e) => write!(f, "json error: {e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
