use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("elements belong to different algebras")]
    CrossAlgebra,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("operation needs sector {expected}, algebra has sector {found}")]
    SectorMismatch { expected: u8, found: u8 },
    #[error("operator {0} does not exist in this sector")]
    BadOperator(String),
    #[error("algebra axiom violated: {0}")]
    Axiom(String),
    #[error("not a conformal vector: {0}")]
    NotConformal(String),
    #[error("not a superconformal vector: {0}")]
    NotSuperconformal(String),
    #[error("not an eigenvector: {0}")]
    NotEigenvector(String),
    #[error("unknown vector `{0}`")]
    UnknownVector(String),
    #[error("no component dictionary for generator `{0}`")]
    Unmapped(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Eval(String),
    #[error("bad JSON: {0}")]
    Json(String),
}
