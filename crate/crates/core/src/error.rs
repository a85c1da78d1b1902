use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("kernels::eval: derivative order {dx}+{dy} is discontinuous on the diagonal x = y = {at}")]
    DiagonalDerivativeUndefined { at: f64, dx: usize, dy: usize },

    #[error("kernels::derive_kernel_oracle: characterizing system is singular ({0})")]
    SingularSystem(String),

    #[error("orthonormalize::factor: Gram matrix is not positive definite at index {index} (pivot {pivot:e})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("solver::solve: source term returned a non-finite value at ({x}, {t})")]
    NonFiniteValue { x: f64, t: f64 },

    #[error("solver::evaluate: point ({x}, {t}) lies outside the problem domain")]
    OutOfDomain { x: f64, t: f64 },

    #[error("problems::canonicalize: degenerate domain [{a}, {b}] x [0, {t_end}]")]
    DegenerateDomain { a: f64, b: f64, t_end: f64 },

    #[error("problems::homogenize: corner data incompatible: {0}")]
    IncompatibleCorners(String),

    #[error("problems::error_table: problem has no exact solution")]
    NoExactSolution,

    #[error("collocation: {0}")]
    InvalidCollocation(String),

    #[error("config: {0}")]
    Config(String),

    #[error("expression: {0}")]
    Expression(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Numerical failures map to CLI exit code 3, everything else to 2.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotPositiveDefinite { .. }
                | Error::NonFiniteValue { .. }
                | Error::SingularSystem(_)
                | Error::DiagonalDerivativeUndefined { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
