use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported spatial dimension {0}, expected 2 or 3")]
    Dimension(usize),
    #[error("edge counts must be positive, got {0:?}")]
    ZeroEdges(Vec<usize>),
    #[error("form degree {degree} out of range 0..={max}")]
    Degree { degree: usize, max: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    Length { expected: usize, found: usize },
    #[error("polynomial order must be at least 1")]
    ZeroOrder,
    #[error("Gauss-Lobatto root finding did not converge for order {0}")]
    RootFinding(usize),
    #[error("basis index {index} outside {lo}..={hi}")]
    Index { index: usize, lo: usize, hi: usize },
    #[error("reference point ({0}, {1}) lies outside [-1, 1]^2")]
    OutsideReference(f64, f64),
    #[error("non-positive Jacobian determinant {det} in element {element} at ({xi}, {eta})")]
    Jacobian {
        element: usize,
        xi: f64,
        eta: f64,
        det: f64,
    },
    #[error("segment {0} has no {1} data")]
    MissingData(&'static str, &'static str),
    #[error("segment {segment} treats {field} as natural; essential data is not allowed there")]
    NaturalSegment {
        segment: &'static str,
        field: &'static str,
    },
    #[error("singular system: {0}")]
    Singular(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
