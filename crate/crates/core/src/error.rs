use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("non-finite value at term {index}")]
    NonFinite { index: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature order {order} outside 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("quadrature did not reach tolerance: best value {value} with error estimate {estimate:e}")]
    QuadratureNotConverged { value: Complex64, estimate: f64 },

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: Complex64 },

    #[error("|z| = {magnitude} exceeds the 1F1 argument cap {cap}; use the quadrature route")]
    ArgumentCap { magnitude: f64, cap: f64 },

    #[error("branch cut hit: square-root argument {argument} lies on the negative real axis")]
    BranchCut { argument: Complex64 },

    #[error("Re delta = {re} outside the admissible window ({lo}, {hi})")]
    OutsideWindow { re: f64, lo: f64, hi: f64 },

    #[error("admissible window is empty: 8 pi |Delta| alpha = {product} >= 1")]
    EmptyWindow { product: f64 },

    #[error("tolerance {tol:e} not reached after {terms} terms (tail estimate {estimate:e})")]
    ToleranceUnreachable { terms: usize, estimate: f64, tol: f64 },

    #[error("integer overflow while computing coefficient n = {n}")]
    Overflow { n: usize },

    #[error("unknown seed '{0}'")]
    UnknownSeed(String),

    #[error("Dirichlet series diverges at s = {s}: {reason}")]
    Divergent { s: Complex64, reason: String },

    #[error("lattice term ({m}, {n}) has a near-vanishing denominator")]
    NearSingular { m: i64, n: i64 },

    #[error("seed description: {0}")]
    SeedFormat(String),
}
