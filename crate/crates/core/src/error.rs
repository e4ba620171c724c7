use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("EmptyGenerators: a semigroup needs at least one generator")]
    EmptyGenerators,
    #[error("NonPositive: {0} is not a positive rational")]
    NonPositive(String),
    #[error("NotMember: {value} is not in the semigroup")]
    NotMember { value: i64 },
    #[error("GluingInvalid: {0}")]
    GluingInvalid(String),
    #[error("NotSubalgebra: coefficient generator {generator} is not in the extension semigroup")]
    NotSubalgebra { generator: i64 },
    #[error("PreconditionFailed: {0}")]
    PreconditionFailed(String),
    #[error("NotFlat: the log matrix is only defined for flat rectangular algebras")]
    NotFlat,
    #[error("InternalInconsistency: {0}")]
    InternalInconsistency(String),
    #[error("BoundTooSmall: bound {given} is below the required {required}")]
    BoundTooSmall { given: i64, required: i64 },
    #[error("TooLarge: {0}")]
    TooLarge(String),
    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// Stable name of the violated invariant, used in CLI messages.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyGenerators => "EmptyGenerators",
            Error::NonPositive(_) => "NonPositive",
            Error::NotMember { .. } => "NotMember",
            Error::GluingInvalid(_) => "GluingInvalid",
            Error::NotSubalgebra { .. } => "NotSubalgebra",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::NotFlat => "NotFlat",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::BoundTooSmall { .. } => "BoundTooSmall",
            Error::TooLarge(_) => "TooLarge",
            Error::Parse(_) => "Parse",
        }
    }
}
