use crate::Real;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("no zeros for nu < 1.5 (got nu = {0})")]
    Domain(Real),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("argument {re}{im:+}i lies on the branch cut (-inf, 0]")]
    BranchCut { re: Real, im: Real },

    #[error("{what} did not converge")]
    NonConvergence { what: &'static str },

    #[error("quadrature failed for {what}: estimated error {err:e} exceeds tolerance")]
    QuadratureFailure { what: &'static str, err: Real },

    #[error("nu = {nu} is within the guard band of nu_{n} = {}", 2.0 * (*n as Real) + 1.5)]
    GuardBandViolation { nu: Real, n: usize },

    #[error("no sign change bracketing x_{n}")]
    BracketFailure { n: usize },

    #[error("closed form and recurrence disagree for c_{m}^({n}) by {diff:e}")]
    ClosedFormMismatch { n: usize, m: usize, diff: Real },

    #[error("factorization residual {residual:e} at degree {k} for n = {n}")]
    FactorizationMismatch { n: usize, k: usize, residual: Real },

    #[error("Newton polish moved {re}{im:+}i by {moved:e}")]
    PolishDivergence { re: Real, im: Real, moved: Real },

    #[error("ambiguous zero tracking at nu = {nu}")]
    TrackingAmbiguity { nu: Real },
}

impl Error {
    /// True for usage or domain errors; false for numerical failures.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::InvalidInput(_) | Error::BranchCut { .. } | Error::GuardBandViolation { .. }
        )
    }
}
