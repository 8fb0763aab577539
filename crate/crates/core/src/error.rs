use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix too large for {op}: n = {n}, limit {limit}")]
    Size {
        op: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("matrix is zero within tolerance")]
    ZeroMatrix,

    #[error("matrix has rank at least 2 (2x2 minor residual {residual:e})")]
    RankTooHigh { residual: f64 },

    #[error("wedge vector is zero")]
    ZeroWedge,

    #[error("wedge vector is not decomposable (re-encode residual {residual:e})")]
    NotDecomposable { residual: f64 },

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence {
        iterations: usize,
        residual: f64,
        best: Vec<num_complex::Complex64>,
    },

    #[error("pairing matrix W0^T V is singular: the subspaces are not biorthogonalizable")]
    Biorthogonality,

    #[error("eigenvalue is not an eigenvalue of the matrix (A - lambda I has full rank)")]
    NotEigenvalue,

    #[error("adj_{k}(A - lambda I) vanishes: requested multiplicity is below the geometric multiplicity")]
    MultiplicityTooLow { k: usize },

    #[error("defective eigenvalue: tr adj_{k}(A - lambda I) = {trace:e} vanishes while adj_{k} is nonzero")]
    DefectiveEigenvalue { k: usize, trace: f64 },

    #[error(
        "derivative cross-check failed: trace route {trace_route}, polynomial route {poly_route}"
    )]
    DerivativeMismatch {
        trace_route: String,
        poly_route: String,
    },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("spectrum has a repeated eigenvalue near {near}")]
    DegenerateSpectrum { near: num_complex::Complex64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("shape error: {0}")]
    Shape(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
