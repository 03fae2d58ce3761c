use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("invalid parameters (r={r}, q={q}, p={p}): need r>=1, 0<=p<=r-1, q+r>0")]
    InvalidParameters { r: i64, q: i64, p: i64 },
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("T_{index} does not factor as a monomial class times h(x^3, y^2)")]
    NotFactorable { index: usize },
    #[error("normalized tau_{n} depends on x: {detail}")]
    XDependenceDetected { n: usize, detail: String },
    #[error("no radius in the ladder keeps the denominator bounded away from zero")]
    NoValidRadius,
    #[error("trapezoidal estimate did not settle before {nodes} nodes")]
    NonConvergence { nodes: usize },
    #[error("contour radius {radius} reaches the smallest zero of the denominator")]
    RadiusTooLarge { radius: f64 },
    #[error("depressed cubic has zero linear coefficient")]
    DegenerateCubic,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("cubic has a repeated root (derivative modulus {derivative:e})")]
    RepeatedRoot { derivative: f64 },
    #[error("y0 must be nonzero")]
    ZeroY,
    #[error("p-plane point with r={r} lies outside the region r >= 1")]
    OutsideDomain { r: f64 },
    #[error("branch tracking is ambiguous near x = {re}{im:+}i; refine the grid")]
    GridTooCoarse { re: f64, im: f64 },
    #[error("attractor curve has no samples")]
    EmptyCurve,
    #[error("coefficient does not fit in double precision")]
    Overflow,
    #[error("zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
