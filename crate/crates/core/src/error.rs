use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gcd of zero forms")]
    GcdOfZero,
    #[error("{0} of the zero form")]
    ZeroForm(&'static str),
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("monomial {monomial} has bidegree ({found_a},{found_b}), expected ({a},{b})")]
    Bidegree {
        monomial: String,
        found_a: u32,
        found_b: u32,
        a: u32,
        b: u32,
    },
    #[error("non-reduced curve: {0}")]
    NonReduced(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("invalid Euler identity id {0} (expected 1..=13)")]
    InvalidIdentity(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Hessian undefined for this type: {0}")]
    HessianUndefined(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("singular point: Weierstrass by convention, no osculating curve")]
    SingularPoint,
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("criterion inapplicable; use gap analysis ({0})")]
    Inapplicable(String),
    #[error("non-proper intersection: the curve is a component of the other curve")]
    NonProperIntersection,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
