//! Compound matrices, higher adjugates, Plücker coordinates, and recovery of
//! eigenvector wedges from derivatives of the characteristic polynomial.
//!
//! Every algorithm runs over two scalar kernels: exact rational-complex
//! arithmetic ([`ExactComplex`]) and double-precision complex
//! ([`num_complex::Complex64`]).

pub mod cli;
pub mod combinatorics;
pub mod compound;
pub mod error;
pub mod exterior;
pub mod io;
pub mod matrix;
pub mod recovery;
pub mod scalar;
pub mod spectral;
pub mod suite;
pub mod testgen;

pub use combinatorics::{binomial, lex_subsets, subset_sign, IndexSubset};
pub use compound::{
    adjugate_via_delta, compound, delta_matrix, det_sum, higher_adjugate,
    reflected_complement_permutation, AdjugateMatrix, CompoundMatrix,
};
pub use error::{Error, Result};
pub use exterior::{wedge_decode, wedge_encode, WedgeVector};
pub use matrix::{det_laplace, rank1_factor, submatrix_det, AnyMatrix, Matrix};
pub use num_complex::Complex64;
pub use recovery::{
    dual_basis, hermitian_ev_magnitudes, normal_left_from_right, recover_wedge, recover_wedge_k,
    verify_theorem, HermitianTable, RecoveryResult, TheoremReport,
};
pub use scalar::{ExactComplex, Scalar, TolerancePolicy};
pub use spectral::{
    aberth_roots, charpoly_faddeev, charpoly_via_adjugates, cluster_multiplicities,
    geometric_multiplicity, jacobi_derivative, poly_derivative_eval, CharPoly, SpectralOptions,
    SpectrumEntry,
};
