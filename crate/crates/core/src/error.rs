use thiserror::Error;

/// Errors raised by the polytope, dicharacteristic and cohomology engines.
///
/// Facet and vertex labels carried by variants are 0-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("half-space {0} has a zero normal")]
    ZeroNormal(usize),
    #[error("inconsistent dimensions: {0}")]
    DimensionMismatch(String),
    #[error("arrangement is not simple: point {point} lies on {count} bounding hyperplanes")]
    NotSimple { point: String, count: usize },
    #[error("arrangement is unbounded")]
    Unbounded,
    #[error("half-space {0} is redundant")]
    Redundant(usize),
    #[error("arrangement has empty intersection")]
    Empty,
    #[error("facet set {0:?} is not a vertex")]
    NotAVertex(Vec<usize>),
    #[error("the first n normals are linearly dependent")]
    DegenerateCorner,
    #[error("polytope is not finely ordered")]
    NotFinelyOrdered,
    #[error("polytope is not in normal form")]
    NotNormalForm,
    #[error("point does not lie in the polytope")]
    NotInPolytope,
    #[error("point is not on the variety (relative residual {0:e})")]
    NotOnVariety(f64),
    #[error("invalid combinatorial polytope: {0}")]
    InvalidPolytope(String),
    #[error("matrix is not unimodular at vertex {vertex:?} (determinant {det})")]
    NotUnimodular { vertex: Vec<usize>, det: i64 },
    #[error("invalid characteristic matrix: {0}")]
    InvalidCharMatrix(String),
    #[error("no geometric realization attached")]
    NoGeometry,
    #[error("initial vertices carry equal signs; no compatible orientation exists")]
    SignClash,
    #[error("dimension {0} is too low for this operation (need n >= 2)")]
    DimensionTooLow(usize),
    #[error("wrong dimension: expected {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("top-degree cohomology has dimension {0}, expected 1")]
    TopDegreeNotRankOne(usize),
    #[error("class has degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },
    #[error("characteristic number {0} is not an integer")]
    NonIntegral(String),
    #[error("input exceeds the supported scale: {0}")]
    ScaleLimit(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
