use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("root refinement did not converge on [{lo}, {hi}]")]
    NonConvergence { lo: f64, hi: f64 },

    #[error("argument is constant in the eliminated variable")]
    DegenerateElimination,

    #[error("invalid degree {found}: {reason}")]
    InvalidDegree { found: usize, reason: &'static str },

    #[error("polynomial must be monic with zero constant term")]
    NotNormalized,

    #[error("the two polynomials coincide and do not span a line")]
    NotALine,

    #[error("pencil is not in canonical form: {0}")]
    NonCanonical(&'static str),

    #[error("scaling factor must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("operation requires cell {expected}, polynomial lies in {found}")]
    WrongCell { expected: &'static str, found: String },

    #[error("point is not on the relation curve (residual {residual:e})")]
    NotOnCurve { residual: f64 },

    #[error("operation requires an even degree")]
    OddDegree,

    #[error("map components have unequal degrees")]
    UnequalDegrees,

    #[error("expected {expected} components, found {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("first coefficients coincide; the rotation has no canonical representative")]
    FixedAxis,

    #[error("sample lies within {spread:e} of the equal-first-coefficient stratum")]
    StratumMargin { spread: f64 },

    #[error("loop is not closed")]
    OpenLoop,

    #[error("no regular value found after {retries} attempts; refine the triangulation or perturb it")]
    DegenerateSimplex { retries: usize },

    #[error("degenerate crossing at (u, v, t) = ({u}, {v}, {t})")]
    DegenerateCrossing { u: f64, v: f64, t: f64 },

    #[error("resolution {0} is below the minimum of 16")]
    ResolutionTooLow(usize),

    #[error("bisection bracket [{lo}, {hi}] does not change sign")]
    BadBracket { lo: f64, hi: f64 },

    #[error("ordering violated: {0}")]
    OrderingViolated(String),

    #[error("unsupported input: {0}")]
    Unsupported(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
