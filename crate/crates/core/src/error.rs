use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("q must not satisfy q^4 = 1; order d = {0} is not allowed")]
    DisallowedOrder(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields (d = {0} vs d = {1})")]
    ContextMismatch(u32, u32),
    #[error("the q-Racah parameter must be nonzero")]
    ZeroParameter,
    #[error("word of length {len} exceeds the degree cap {cap}")]
    DegreeOverflow { len: usize, cap: usize },
    #[error("overlap resolution produced a relation whose leading term is not a scalar multiple of a word: {0}")]
    UnorientableRelation(String),
    #[error("sequence is of type D; no canonical congruence class applies")]
    TypeDInput,
    #[error("matrix shapes do not match: {0}")]
    ShapeMismatch(String),
    #[error("{0} does not act as a scalar")]
    NotScalar(String),
    #[error("the product of (B - theta_i) does not vanish on the module")]
    VanishingFails,
    #[error("the spectrum of B matches no q-Racah sequence from the candidate set")]
    NoQRacahMatch,
    #[error("module is not irreducible")]
    NotIrreducible,
    #[error("the ansatz admits no solution")]
    NoSolution,
    #[error("elimination exceeded the solver bound ({0})")]
    SolverDegreeExceeded(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
