//! Error type shared by all modules of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A length was negative where only nonnegative values make sense.
    #[error("length must be nonnegative, got {0}")]
    NegativeLength(f64),

    /// A length was zero (a cusp) or negative where the operation needs a
    /// genuine geodesic of positive length.
    #[error("{op} requires a positive length, got {value} (length 0 encodes a cusp)")]
    NonPositiveLength { op: &'static str, value: f64 },

    /// Half-traces of closed geodesics are cosh(length/2) and therefore >= 1.
    #[error("half-trace must be >= 1, got {0}")]
    HalfTraceRange(f64),

    /// sinh(a)*sinh(b) <= 1: no right-angled pentagon with these sides.
    #[error("degenerate pentagon: sinh(a)*sinh(b) = {product} <= 1")]
    DegeneratePentagon { product: f64 },

    /// The quadratic for the third trace coordinate has no real root.
    #[error("no cusped torus with these coordinates (discriminant {discriminant} < 0)")]
    NoCuspedTorus { discriminant: f64 },

    /// A trace coordinate was <= 1, i.e. not a closed geodesic of positive length.
    #[error("degenerate surface: trace coordinate {value} <= 1")]
    DegenerateSurface { value: f64 },

    /// The triple does not satisfy the cusp relation 2rst = r^2 + s^2 + t^2.
    #[error("triple is not cusped: relation residual {residual}")]
    NotCusped { residual: f64 },

    /// Slope pairs must be coprime and nonzero.
    #[error("invalid slope ({p}, {q}): must be a primitive nonzero integer pair")]
    InvalidSlope { p: i64, q: i64 },

    /// A scalar solve ran out of iterations; the last bracket is attached.
    #[error("root solve did not converge after {iterations} iterations, last bracket [{lo}, {hi}]")]
    NoConvergence { iterations: u32, lo: f64, hi: f64 },

    /// Closed-form constants exist only for one, two and three crossings.
    #[error("no closed-form constant is known for n = {n}")]
    UnknownConstant { n: u32 },

    /// The whole search domain was infeasible.
    #[error("search failed: {reason}")]
    SearchFailed { reason: String },

    /// The independent matrix representation could not be built.
    #[error("matrix oracle failure: {reason}")]
    OracleFailure { reason: String },

    /// A configuration value violated its documented range.
    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },
}
