use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain where the function is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Gamma evaluated at zero or a negative integer.
    #[error("pole of the Gamma function at x = {0}")]
    Pole(f64),

    /// A malformed argument (odd Bernoulli index, bad grid, too few terms...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A relation that holds as a theorem was violated numerically.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}
