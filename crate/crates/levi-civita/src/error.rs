//! Crate-wide error type.

use crate::exponent::Exponent;

/// Errors produced by field arithmetic, series evaluation, measure
/// operations and the expression front end.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Inverse of a number that is exactly zero.
    #[error("division by zero")]
    ZeroDivision,

    /// An operation needed the leading term of a number whose known
    /// coefficients stop before its valuation.
    #[error("insufficient horizon: leading term is not exact")]
    InsufficientHorizon,

    /// An exact (infinite-horizon) result was requested but the series
    /// computing it does not terminate.
    #[error("result has no finite representation at the requested horizon")]
    NonTerminating,

    /// Power series evaluated outside its weak-convergence region.
    #[error("point lies outside the weak convergence region of the series")]
    NotInWeakConvergenceRegion,

    /// A truncated elementary series was evaluated at a non-infinitesimal
    /// offset from its center.
    #[error("offset from series center is not infinitesimal")]
    NonInfinitesimalOffset,

    /// Argument outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An order comparison that the operation relies on could not be
    /// decided from the known coefficients.
    #[error("order is indeterminate beyond exponent {0}")]
    IndeterminateOrder(Exponent),

    /// Sign analysis of a piece could not be certified.
    #[error("sign undecidable: {0}")]
    SignUndecidable(String),

    /// The set of essential bounds has no infimum (mixed orders of
    /// magnitude in an infinity-norm computation).
    #[error("infinity norm has no infimum: coefficient orders are mixed")]
    NoInfimum,

    /// Root of a number that is not known to be positive.
    #[error("nth root requires a positive operand")]
    NonPositive,

    /// A half-width that must be a positive monomial infinitesimal was not.
    #[error("half-width must be a positive monomial infinitesimal c*d^q with q > 0")]
    NotInfinitesimal,

    /// A sequence did not present strong-Cauchy evidence.
    #[error("sequence is not strongly Cauchy: {0}")]
    NotStronglyCauchy(String),

    /// Derivative pairing of higher order than the bump's seam smoothness.
    #[error("bump is only C^{available} at its seams; order {requested} pairing needs a higher-order bump")]
    InsufficientSmoothness { requested: u32, available: u32 },

    /// A free variable had no binding in the evaluation environment.
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    /// Parse failure, with the byte offset and the tokens that were
    /// expected there.
    #[error("syntax error at offset {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },

    /// An L^p computation met a piece that is not a polynomial with exact
    /// coefficients.
    #[error("piece is not a polynomial with exact coefficients")]
    NonPolynomialPiece,
}

pub type Result<T> = std::result::Result<T, Error>;
