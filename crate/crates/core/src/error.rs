use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("label {label} on edge {a}-{b} is below 2")]
    LabelTooSmall { a: String, b: String, label: i64 },
    #[error("edge {a}-{b} declared with conflicting labels {first} and {second}")]
    AsymmetricLabel { a: String, b: String, first: u32, second: u32 },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator set is not contained in the vertex set")]
    NotASubset,
    #[error("subset {0} is not of finite type")]
    NotSpherical(String),
    #[error("defining graph is not of FC type")]
    NotFcType,
    #[error("Coxeter group enumeration exceeded {0} elements")]
    EnumerationCutoff(usize),
    #[error("ambient groups differ")]
    AmbientMismatch,
    #[error("element is not positive")]
    NotPositive,
    #[error("letter `{0}` lies outside the ambient generator set")]
    LetterOutsideAmbient(String),
    #[error("parabolic subgroup must be {0}")]
    InvalidParabolic(&'static str),
    #[error("graph is {0}")]
    WrongGraphClass(&'static str),
    #[error("no parabolic of the search set contains the element")]
    NoWitness,
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
