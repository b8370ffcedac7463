use thiserror::Error;

/// Errors raised while building complexes, validating words, or operating on
/// thin classes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertexId(String),
    #[error("simplex references unknown vertex `{0}`")]
    UnknownVertexInSimplex(String),
    #[error("simplex {0:?} is affinely dependent")]
    AffinelyDependentSimplex(Vec<String>),
    #[error("the 1-skeleton of the complex is disconnected")]
    DisconnectedComplex,
    #[error("basepoint `{0}` is not a vertex")]
    MissingBasepoint(String),
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension must be positive")]
    ZeroAmbientDimension,
    #[error("simplex with no vertices")]
    EmptySimplex,

    #[error("{}", point_not_in_complex(*.index))]
    PointNotInComplex { index: Option<usize> },
    #[error("word is empty")]
    EmptyWord,
    #[error("word does not start at the basepoint")]
    NotBased,
    #[error("loop does not end at the basepoint")]
    NotClosed,
    #[error("points {0} and {next} share no simplex", next = .0 + 1)]
    NoCommonSimplex(usize),
    #[error("expected a {expected} word")]
    WrongKind { expected: &'static str },

    #[error("parameter {0} is outside [0, 1]")]
    OutOfRange(f64),
    #[error("subdivision has {found} breakpoints, word needs {expected}")]
    SubdivisionLength { expected: usize, found: usize },
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(&'static str),

    #[error("operands live on different complexes")]
    ComplexMismatch,
    #[error("word of length {len} exceeds the exhaustive search bound {max}")]
    TooLong { len: usize, max: usize },

    #[error("reference path does not end at the chart centre")]
    RefEndpointMismatch,
    #[error("point is not in the star of the chart centre")]
    PointNotInStar,
    #[error("point is not in the given simplex")]
    PointNotInSimplex,

    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn point_not_in_complex(index: Option<usize>) -> String {
    match index {
        Some(i) => format!("point {i} does not lie in the complex"),
        None => "point does not lie in the complex".to_owned(),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
