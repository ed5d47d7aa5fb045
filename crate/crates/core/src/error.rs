use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// `(F, F)` vanishes within the relative cutoff, so neither inverse exists.
    #[error("biquaternion is not invertible: |(F,F)| = {scalar_square:e} <= {threshold:e}")]
    NonInvertible { scalar_square: f64, threshold: f64 },

    #[error("invalid velocity {0}: |v| must be < 1")]
    InvalidVelocity(f64),

    #[error("axis must be a non-zero finite 3-vector")]
    InvalidAxis,

    #[error("point ({tau}, {x:?}) lies outside the stencil support of the field")]
    OutOfDomain { tau: f64, x: [f64; 3] },

    #[error("quadrature did not reach tolerance {tolerance:e}: estimated error {estimate:e}")]
    QuadratureBudgetExceeded { estimate: f64, tolerance: f64 },

    #[error("evaluation time tau = {0} must be positive")]
    NegativeTime(f64),

    #[error("mass parameter {re}+{im}i is not supported here: {reason}")]
    UnsupportedMass { re: f64, im: f64, reason: &'static str },

    /// Only the retarded member (`a = 1`) of the kernel family can be convolved forward in time.
    #[error("kernel family weight a = {re}+{im}i has an advanced part; only a = 1 is supported here")]
    UnsupportedBranch { re: f64, im: f64 },

    #[error("wave number k = |omega + rho| must be non-zero")]
    ZeroWaveNumber,

    #[error("wave vector xi must be non-zero")]
    ZeroWaveVector,

    #[error("field has no compact support; convolution needs a bounded source")]
    UnboundedSupport,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
