use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar argument violates its documented precondition.
    InvalidParameter { name: &'static str, reason: &'static str },
    /// `x/k` is a non-positive integer.
    Pole { x: f64, k: f64 },
    /// `|ln Γ_k(x)|` does not fit in a double; use the log form instead.
    Overflow { x: f64, k: f64 },
    /// Argument outside the domain of the operation.
    Domain(&'static str),
    /// The series stopping rule did not fire within the term budget.
    NonConvergence { terms: usize, estimate: f64 },
    /// Panel doubling did not settle below the requested tolerance.
    Quadrature { panels: usize, change: f64 },
    /// A boundary value configuration breaks one of its invariants.
    InvalidConfig(&'static str),
    /// The Green's function representation does not exist for this configuration.
    DegenerateConfig { constraint: &'static str, value: f64 },
    /// Power iteration could not isolate a dominant eigenvalue.
    SpectralFailure { iterations: usize, residual: f64 },
    /// Malformed sampled function.
    InvalidGrid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, reason } => write!(f, "invalid parameter `{name}`: {reason}"),
            Error::Pole { x, k } => write!(f, "k-Gamma pole at x = {x} (k = {k})"),
            Error::Overflow { x, k } => {
                write!(f, "k-Gamma({x}; k = {k}) overflows double precision, use log_k_gamma")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonConvergence { terms, estimate } => write!(
                f,
                "Mittag-Leffler series did not converge after {terms} terms (tail estimate {estimate:e})"
            ),
            Error::Quadrature { panels, change } => write!(
                f,
                "quadrature did not converge at {panels} panels (last relative change {change:e})"
            ),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::DegenerateConfig { constraint, value } => {
                write!(f, "degenerate configuration: {constraint} violated (value {value:e})")
            }
            Error::SpectralFailure { iterations, residual } => write!(
                f,
                "power iteration failed after {iterations} iterations (residual {residual:e})"
            ),
            Error::InvalidGrid(msg) => write!(f, "invalid grid function: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
