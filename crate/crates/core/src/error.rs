use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The word is not a concatenation of substitution images.
    #[error("word `{0}` is not in the image of the substitution")]
    NotInImage(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("`{0}` is not a factor of the fixed word of the required shape")]
    NotAFactor(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    /// A constructive result failed its own re-check. Always a logic bug.
    #[error("internal verification failed: {0}")]
    InternalVerificationFailed(String),

    /// The translates of a clopen set required by a cyclic move overlap.
    #[error("translates T^{m}(U), ..., T^{n}(U) are not pairwise disjoint")]
    NotDisjoint { m: i64, n: i64 },

    #[error("window of half-width {have} too small, need {need}")]
    WindowTooSmall { have: usize, need: usize },

    #[error("tau is undefined below level 3 (got level {0})")]
    UndefinedTau(u32),

    #[error("cocycle does not define a bijection")]
    NotBijective,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn limit(what: &'static str, limit: usize) -> Self {
        Error::ResourceLimit { what, limit }
    }
}
