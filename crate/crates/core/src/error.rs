use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domains overlap or leave a gap: {0}")]
    Overlap(String),
    #[error("not bijective: {0}")]
    NotBijective(String),
    #[error("bad interval lengths: {0}")]
    BadLengths(String),
    #[error("interval lengths differ: {0}")]
    LengthMismatch(String),
    #[error("map is not orientation preserving")]
    NotOrientationPreserving,
    #[error("{count} singular points exceed the enumeration bound {bound}")]
    BoundExceeded { count: usize, bound: usize },
    #[error("word does not evaluate to the identity class")]
    ClassNotIdentity,
    #[error("cyclic order of a triple with repeated points")]
    DegenerateTriple,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal structure check failed: {0}")]
    StructureViolated(String),
    #[error("invalid lift: {0}")]
    InvalidLift(String),
    #[error("{0} is not 0 or a squarefree integer >= 2")]
    BadField(u32),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
}

impl Error {
    /// Machine-readable kind used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Overlap(_) => "overlap",
            Error::NotBijective(_) => "not-bijective",
            Error::BadLengths(_) => "bad-lengths",
            Error::LengthMismatch(_) => "length-mismatch",
            Error::NotOrientationPreserving => "not-orientation-preserving",
            Error::BoundExceeded { .. } => "bound-exceeded",
            Error::ClassNotIdentity => "class-not-identity",
            Error::DegenerateTriple => "degenerate-triple",
            Error::BadParameters(_) => "bad-parameters",
            Error::PreconditionViolated(_) => "precondition-violated",
            Error::StructureViolated(_) => "structure-violated",
            Error::InvalidLift(_) => "invalid-lift",
            Error::BadField(_) => "bad-field",
            Error::FieldMismatch(_) => "field-mismatch",
            Error::Syntax { .. } => "syntax",
        }
    }

    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Syntax { .. })
    }
}
