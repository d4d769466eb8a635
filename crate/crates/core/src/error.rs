use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    Alphabet(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("presentation is not graded: {0}")]
    NotGraded(String),

    #[error("monoid presentation is not length-homogeneous")]
    NotLengthHomogeneous,

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("composite of boundary maps is nonzero (witness column {column})")]
    NonzeroComposite { column: usize },

    #[error("subspace containment violated (witness vector {witness})")]
    Containment { witness: usize },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("unknown basepoint `{0}`")]
    UnknownBasepoint(String),

    #[error("monoid table: {0}")]
    Table(String),

    #[error("relation {index} does not hold in the monoid")]
    RelationViolated { index: usize },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
