use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("malformed cycle notation: {0}")]
    MalformedCycles(String),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("group order exceeds the cap of {cap} elements (raise --max-order)")]
    OrderCapExceeded { cap: usize },

    #[error("element is not a member of the group")]
    NotAnElement,

    #[error("set is not a subgroup of the group")]
    NotASubgroup,

    #[error("group is not transitive")]
    NotTransitive,

    #[error("partition is not a system of imprimitivity for the group")]
    NotABlockSystem,

    #[error("derangement graph would have {vertices} vertices, above the cap of {cap} (raise --max-graph-vertices)")]
    GraphTooLarge { vertices: usize, cap: usize },

    #[error("subgroups are not Kronecker equivalent")]
    NotEquivalent,

    #[error("invalid normal imprimitivity series: {0}")]
    InvalidSeries(String),

    #[error("construction check failed: {0}")]
    ConstructionViolation(String),

    #[error("partition part of size {size} is smaller than the bound {bound}")]
    PartTooSmall { size: usize, bound: usize },

    #[error("not a partition of the ground set: {0}")]
    NotAPartition(String),

    #[error("line {line}: {kind}")]
    MalformedGroupFile { line: usize, kind: Box<Error> },

    #[error("unknown catalog entry `{0}`")]
    UnknownGroup(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::MalformedGroupFile { line, kind: Box::new(self) }
    }
}
