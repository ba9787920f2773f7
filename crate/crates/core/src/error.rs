use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared generator `{name}` at position {pos}")]
    UndeclaredGenerator { name: String, pos: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("group is not solvable")]
    NotSolvable,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u128 },
    #[error("generator images do not define a homomorphism")]
    NotHomomorphism,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn cap(what: impl Into<String>, cap: u128) -> Self {
        Error::CapExceeded { what: what.into(), cap }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
