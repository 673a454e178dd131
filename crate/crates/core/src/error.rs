use thiserror::Error;

/// Errors raised by the library. Failed mathematical checks are not errors;
/// they are reported through the various report types.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("elements belong to distinct rings: {left} and {right}")]
    DistinctRings { left: String, right: String },

    #[error("unknown facet id `{0}`")]
    UnknownFacet(String),

    #[error("no vector assigned to facet `{0}`")]
    MissingVector(String),

    #[error("facet `{0}` is marked exceptional and must not carry a vector")]
    MarkedFacetHasVector(String),

    #[error("vector for facet `{facet}` has length {len}, expected {rank}")]
    VectorLength {
        facet: String,
        len: usize,
        rank: usize,
    },

    #[error("construction inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
