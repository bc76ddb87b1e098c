use thiserror::Error;

use crate::laurent::LaurentPolynomial;
use crate::quiver::DimVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("quiver has no vertices")]
    Empty,
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} out of range 1..={vertices}")]
    BadIndex { vertex: usize, vertices: usize },
    #[error("vector length {got} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("quiver is not of affine type")]
    NotAffine,
    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),
    #[error("cannot parse quiver: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("variable counts differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("division by zero")]
    DivByZero,
    #[error("quotient is not a Laurent polynomial")]
    NotDivisible,
    #[error("zero polynomial has no denominator vector")]
    ZeroPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("negative dimension vector")]
    NegativeDim,
    #[error("representations live on different quivers")]
    QuiverMismatch,
    #[error("representations live over different primes")]
    PrimeMismatch,
    #[error("dimension vector {e:?} is not between 0 and {d:?}")]
    BadDims { e: DimVector, d: DimVector },
    #[error("dimension {d:?} exceeds the enumeration cap (total {total}, per vertex {per_vertex})")]
    TooLarge { d: DimVector, total: usize, per_vertex: usize },
    #[error("point counts for e = {e:?} are not given by an integer polynomial")]
    NotPolynomialCount { e: DimVector },
    #[error("not enough primes: need {need}, have {have}")]
    NotEnoughPrimes { need: usize, have: usize },
    #[error("no certified sample of {what} after {tries} seeds at p = {prime}")]
    CertificationFailed { what: String, prime: u64, tries: usize },
    #[error("{0:?} is not a real Schur root")]
    NotSchurRoot(DimVector),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClusterError {
    #[error("AR division is not exact at {0}")]
    InexactDivision(String),
    #[error("{0} lies beyond the knitting horizon")]
    HorizonTooSmall(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("cannot parse object expression: {0}")]
    Parse(String),
    #[error("unknown tube {0}")]
    UnknownTube(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TubeError {
    #[error("parameters out of range: {0}")]
    BadParameters(String),
    #[error("identity {name} fails")]
    IdentityFailed {
        name: String,
        lhs: Box<LaurentPolynomial>,
        rhs: Box<LaurentPolynomial>,
    },
    #[error("length {0} is not supported")]
    BadLength(usize),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Basis(#[from] BasisError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BasisError {
    #[error("two catalog elements share dimension {0:?}")]
    DuplicateDimension(DimVector),
    #[error("box vector {0:?} has no catalog element")]
    IncompleteBox(DimVector),
    #[error("{0:?} lies outside the catalog box")]
    OutOfBox(DimVector),
    #[error("remainder with leading key {0:?} is not in the span of the catalog")]
    NotInSpan(DimVector),
    #[error("leading coefficient at key {key:?} is not an integer multiple: {detail}")]
    NonIntegerLeading { key: DimVector, detail: String },
    #[error("no linear grading separates the exchange matrix")]
    NotGraded,
    #[error("triangularity violated: {0}")]
    NotTriangular(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
}

impl From<OracleError> for BasisError {
    fn from(e: OracleError) -> Self {
        BasisError::Cluster(e.into())
    }
}

impl From<QuiverError> for BasisError {
    fn from(e: QuiverError) -> Self {
        BasisError::Cluster(e.into())
    }
}

impl From<LaurentError> for BasisError {
    fn from(e: LaurentError) -> Self {
        BasisError::Cluster(e.into())
    }
}

impl From<QuiverError> for TubeError {
    fn from(e: QuiverError) -> Self {
        TubeError::Cluster(e.into())
    }
}

impl From<OracleError> for TubeError {
    fn from(e: OracleError) -> Self {
        TubeError::Cluster(e.into())
    }
}

impl From<LaurentError> for TubeError {
    fn from(e: LaurentError) -> Self {
        TubeError::Cluster(e.into())
    }
}
