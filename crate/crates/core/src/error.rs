use thiserror::Error;

/// Errors produced by the library. Theorem-check failures are reported through
/// [`Error::Invariant`] so that callers can tell them apart from bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("facet list is empty")]
    EmptyFacetList,

    #[error("facet {0} has no vertices")]
    EmptyFacet(usize),

    #[error("vertex `{0}` appears twice in one facet")]
    DuplicateVertex(String),

    #[error("malformed vertex label `{0}`")]
    BadLabel(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("face {0} is not a face of the ambient complex")]
    NotSubcomplex(String),

    #[error("the image of face {face} is {image}, which is not a face of the target")]
    NotSimplicial { face: String, image: String },

    #[error("complex is not pure")]
    NotPure,

    #[error("complex is empty")]
    EmptyComplex,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition does not respect the boundary: component containing {0} is split between classes")]
    BoundaryNotRespected(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown catalogue entry `{0}`")]
    UnknownName(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("not a closed pseudomanifold: {0}")]
    NotPseudomanifold(String),

    #[error("drill site is not a subcomplex of the second derived subdivision: {0}")]
    DrillSite(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no certified partition found within the search budget")]
    NoCertifiedPartition,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
