use thiserror::Error;

/// Library-wide error type. Variants are grouped by how the CLI maps them to
/// exit codes: bad input (2), numerical failure (3), property violation (4).
#[derive(Debug, Error)]
pub enum Error {
    // --- input / construction errors ---
    #[error("frequency vector must be nonempty and nonzero")]
    ZeroFrequency,

    #[error("spectrum input is not symmetric: {0:?} present without its negation")]
    AsymmetricInput(Vec<i64>),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("closed form requires step b < 2N, got b={b}, n={n}")]
    UnsupportedRegime { b: u32, n: u32 },

    #[error("coefficients violate the conjugate-symmetry requirement at frequency {0:?}")]
    NotHermitian(Vec<i64>),

    #[error("frequency {0:?} not present in the polynomial's spectrum")]
    FrequencyNotPresent(Vec<i64>),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    // --- numerical failures ---
    #[error("polynomial is identically zero (all coefficients below 1e-14)")]
    ZeroPolynomial,

    #[error("rootfinder did not meet the residual contract: max residual {max_residual:.3e} > {limit:.3e}")]
    RootfinderFailed { max_residual: f64, limit: f64 },

    #[error("quadrature unreliable: polynomial has a near-zero on the arc (estimated distance {estimated:.3e} < {limit:.3e})")]
    NearZeroOnArc { estimated: f64, limit: f64 },

    #[error("positivity check failed: minimum {min:.3e} at t={at:.6} over [{lo:.6}, {hi:.6}]")]
    PositivityCheckFailed { min: f64, at: f64, lo: f64, hi: f64 },

    // --- property violations (bugs, not new math) ---
    #[error("ball-bound gate tripped: gap {gap:.12} exceeds bound {bound:.12} + tolerance")]
    BallBoundGate { gap: f64, bound: f64 },

    #[error("property violation: {0}")]
    PropertyViolation(String),
}

impl Error {
    /// Process exit code for the CLI: 2 input, 3 numerical, 4 property violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ZeroFrequency
            | Error::AsymmetricInput(_)
            | Error::DimensionMismatch { .. }
            | Error::InvalidParameter(_)
            | Error::UnsupportedRegime { .. }
            | Error::NotHermitian(_)
            | Error::FrequencyNotPresent(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::ZeroPolynomial
            | Error::RootfinderFailed { .. }
            | Error::NearZeroOnArc { .. }
            | Error::PositivityCheckFailed { .. } => 3,
            Error::BallBoundGate { .. } | Error::PropertyViolation(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
