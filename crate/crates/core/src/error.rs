use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("ideal not certified admissible: no degree <= {max_degree} has all paths in the ideal")]
    NotAdmissible { max_degree: usize },
    #[error("generator is zero in the algebra")]
    ZeroGenerator,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("operation requires a nonzero module")]
    ZeroModule,
    #[error("representation violates relation {0}")]
    RelationViolated(String),
    #[error("exact test found a summand but no split pair was found in {0} trials")]
    SplitSearchExhausted(usize),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("algebra is not monomial")]
    NotMonomial,
    #[error("path is not perfect")]
    NotPerfect,
    #[error("lift violates a relation at order {0}")]
    InvalidLift(usize),
    #[error("prerequisite fails: {0}")]
    PrerequisiteFails(String),
}
