use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty complex: at least one simplex is required")]
    EmptyComplex,

    #[error("simplex {0} repeats a vertex")]
    RepeatedVertex(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),

    #[error("simplex {0} is not in the complex")]
    UnknownSimplex(String),

    #[error("unknown subcomplex `{0}`")]
    UnknownSubcomplex(String),

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: i64, max: i64 },

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("cochain is not a cocycle")]
    NotACocycle,

    #[error("precondition violated for pair ({0}, {1}): {2}")]
    PairPrecondition(String, String, String),

    #[error("subcomplex `{0}` is not full")]
    NotFull(String),

    #[error("subcomplex `{0}` is not connected")]
    NotConnected(String),

    #[error("subcomplex `{0}` is empty")]
    EmptySubcomplex(String),

    #[error(
        "complex must be barycentrically subdivided at least twice before collapsing (found {0})"
    )]
    NotSubdivided(u32),

    #[error("complex is not pure-dimensional: maximal simplex {0} has dimension below {1}")]
    NonPure(String, usize),

    #[error("not a pseudomanifold: codimension-one simplex {simplex} is a face of {count} top simplices")]
    NotPseudomanifold { simplex: String, count: usize },

    #[error("invalid perversity: {0}")]
    InvalidPerversity(String),

    #[error("invalid stratification: {0}")]
    InvalidStratification(String),

    #[error("cover condition fails: simplex {0} lies in neither subcomplex")]
    InvalidCover(String),

    #[error("{0}")]
    Document(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusEntry(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
