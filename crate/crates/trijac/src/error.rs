use thiserror::Error;

/// Errors raised by the numeric and exact kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    /// A lower hypergeometric parameter reached zero inside the summation range.
    #[error("lower parameter {param} reaches zero at term {term}")]
    DegenerateLowerParameter { param: String, term: usize },

    /// Gamma function evaluated at a non-positive integer.
    #[error("gamma pole at {0}")]
    Pole(String),

    /// A gamma ratio whose arguments do not pair up by integer shifts cannot
    /// be reduced to a rational number.
    #[error("gamma ratio does not reduce to a rational: {0}")]
    IrreducibleRatio(String),

    /// A closed-form coefficient denominator vanishes for these parameters.
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),

    /// Input outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, KernelError>;
