use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("bad unit: {0}")]
    BadUnit(String),
    #[error("bad idempotents: {0}")]
    BadIdempotents(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("algebra is infinite dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("algebra is not basic as presented: {0}")]
    NotBasic(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("modules live over different algebras or sides")]
    SideMismatch,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("undecided within budget {0}")]
    Undecided(u64),
    #[error("condition fails: {0}")]
    ConditionFails(String),
    #[error("simple module {0} does not have strong grade at least 2")]
    NotInD(usize),
    #[error("summands are not pairwise non-isomorphic: {0} and {1}")]
    NotPairwiseNoniso(usize, usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
