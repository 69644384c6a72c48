use thiserror::Error;

/// Errors produced by the library. Numeric payloads are reported as `f64`
/// regardless of the scalar type used for the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected 5 eigenvalues, got {0}")]
    WrongLength(usize),

    #[error("non-finite eigenvalue at position {index}")]
    NonFinite { index: usize },

    #[error("trace ≠ 0: eigenvalues sum to {sum:e} (tolerance {tol:e})")]
    NonZeroTrace { sum: f64, tol: f64 },

    #[error("spectrum is identically zero and has no normalized form")]
    ZeroSpectrum,

    #[error("largest eigenvalue {lambda1} is not positive")]
    NonPositiveLeading { lambda1: f64 },

    #[error("|λ5| = {abs_lambda5} exceeds λ1 = {lambda1}; the spectral radius must be the Perron root")]
    NotPerronDominant { lambda1: f64, abs_lambda5: f64 },

    #[error("tuple (1, {x}, {y}, {l4}, {l5}) is not non-increasing")]
    NotOrdered { x: f64, y: f64, l4: f64, l5: f64 },

    #[error("{what}: argument {value} outside domain {domain}")]
    Domain { what: &'static str, value: f64, domain: &'static str },

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("matrix order {0} outside 1..=5")]
    BadOrder(usize),

    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },

    #[error("matrix entry ({i}, {j}) = {value:e} is negative")]
    NegativeEntry { i: usize, j: usize, value: f64 },

    #[error("matrix trace {trace:e} is not zero")]
    NonZeroMatrixTrace { trace: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("no nonnegative eigenvector for the largest eigenvalue (entry {value:e})")]
    NotPerronLike { value: f64 },

    #[error("glue precondition violated: {0}")]
    GluePrecondition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("u = {u:e} is degenerate")]
    DegenerateU { u: f64 },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("not realizable: {0}")]
    NotRealizable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
