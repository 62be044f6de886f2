use thiserror::Error;

/// Errors raised by the numerical pipeline and the run front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParams { name: &'static str, reason: String },

    #[error("Liouvillian is numerically singular (condition estimate {condition:.3e}); steady state is not unique")]
    SingularLiouvillian { condition: f64 },

    #[error("step size {dt} too large: dt * spectral radius = {product:.3} exceeds {bound}")]
    StepSizeTooLarge { dt: f64, product: f64, bound: f64 },

    #[error("state vector violates conjugate pairing by {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("resolvent singular at omega = {omega} (condition estimate {condition:.3e})")]
    ResolventSingular { omega: f64, condition: f64 },

    #[error("correlation decayed only to {residual:.3e} at horizon tau = {horizon}")]
    HorizonTooShort { horizon: f64, residual: f64 },

    #[error("dressed spectrum degenerate: eigenvalues {a} and {b} coincide")]
    DegenerateSpectrum { a: f64, b: f64 },

    #[error("analytic squeezing parameter requires {0}")]
    OutsideAnalyticRegime(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid value for `{key}`: {message}")]
    Validation { key: String, message: String },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for the command-line front end: 1 for numerical
    /// failures, 2 for configuration and I/O problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Validation { .. } | Error::Io { .. } => 2,
            Error::InvalidParams { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
