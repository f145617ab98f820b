use thiserror::Error;

/// Errors raised by the numerical kernels, the multiplier evaluators and the
/// spectral solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at x = {0}: argument is a nonpositive integer")]
    Pole(f64),

    #[error("overflow: |f(x)| exceeds the representable range at x = {0}")]
    Overflow(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("beta = {beta} is excluded for n = {n} (beta = n + {offset})")]
    ExcludedBeta { n: usize, beta: f64, offset: usize },

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("quadrature did not reach tolerance within {subdivisions} subdivisions (error estimate {error:e})")]
    QuadratureBudget { subdivisions: usize, error: f64 },

    #[error("no reliable evaluation path: {0}")]
    Evaluation(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("right-hand side is not mean-zero: |f_0| = {mean:e} exceeds {threshold:e}")]
    Compatibility { mean: f64, threshold: f64 },

    #[error("eigenvalue {value:e} at mode {index:?} is too small to divide by")]
    SingularEigenvalue { index: Vec<i64>, value: f64 },
}

impl Error {
    /// True for errors caused by invalid user input rather than a numerical
    /// failure. The CLI maps these to exit status 2.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Pole(_)
                | Error::Domain(_)
                | Error::Parameter(_)
                | Error::Invalid(_)
                | Error::ExcludedBeta { .. }
                | Error::ShapeMismatch(_)
                | Error::Compatibility { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
