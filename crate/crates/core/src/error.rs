use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty expression")]
    EmptyInput,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed coefficient: {0}")]
    MalformedCoefficient(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("no differential rule for generator `{0}`")]
    MissingRule(String),
    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),
    #[error("invalid presentation `{name}`: {summary}")]
    InvalidPresentation { name: String, summary: String },
    #[error("invalid input: {0}")]
    InvalidData(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("bad builtin parameters: {0}")]
    BadParams(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("element is not a cycle; its differential is {0}")]
    NotACycle(String),
    #[error("element is not bidegree-homogeneous")]
    Inhomogeneous,
    #[error("point is not on the representation scheme: entry `{variable}` evaluates to {value}")]
    PointNotOnScheme { variable: String, value: String },
    #[error("resource cap exceeded: {what} needs more than {limit} monomials")]
    ResourceCap { what: String, limit: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
