//! Wedge products in Plücker coordinates.
//!
//! `x_1 ∧ ... ∧ x_k` is stored as the vector of all k x k minors of the
//! n x k matrix `[x_1 ... x_k]`, indexed by the lexicographic rank of the row
//! subset.

use crate::combinatorics::{binomial, lex_subsets, IndexSubset};
use crate::error::{Error, Result};
use crate::matrix::{max_abs_vec, submatrix_det, Matrix};
use crate::scalar::{Scalar, TolerancePolicy};

#[derive(Clone, Debug, PartialEq)]
pub struct WedgeVector<T> {
    ambient: usize,
    grade: usize,
    coords: Vec<T>,
}

impl<T: Scalar> WedgeVector<T> {
    pub fn new(ambient: usize, grade: usize, coords: Vec<T>) -> Result<Self> {
        if grade > ambient || coords.len() != binomial(ambient, grade) {
            return Err(Error::Shape(format!(
                "{} coordinates for grade {grade} in dimension {ambient}",
                coords.len()
            )));
        }
        Ok(WedgeVector {
            ambient,
            grade,
            coords,
        })
    }

    /// Grade-1 wedge vectors are ordinary vectors.
    pub fn from_vector(v: Vec<T>) -> Self {
        WedgeVector {
            ambient: v.len(),
            grade: 1,
            coords: v,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    /// Coordinate on the basis element `e_S`.
    pub fn coord(&self, subset: &IndexSubset) -> &T {
        &self.coords[subset.rank()]
    }

    pub fn scale(&self, factor: &T) -> Self {
        WedgeVector {
            ambient: self.ambient,
            grade: self.grade,
            coords: self
                .coords
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        max_abs_vec(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

/// `x_1 ∧ ... ∧ x_k` for the columns of an n x k matrix.
pub fn wedge_encode<T: Scalar>(x: &Matrix<T>) -> Result<WedgeVector<T>> {
    let (n, k) = (x.rows(), x.cols());
    if k == 0 || k > n {
        return Err(Error::domain(format!(
            "wedge of {k} vectors in dimension {n} (need 1 <= k <= n)"
        )));
    }
    let cols = IndexSubset::leading(k, k)?;
    let coords = lex_subsets(n, k)?
        .iter()
        .map(|rows| submatrix_det(x, rows, &cols))
        .collect::<Result<Vec<_>>>()?;
    WedgeVector::new(n, k, coords)
}

/// Recover an n x k matrix `V` with `wedge_encode(V) = p` for a decomposable `p`.
///
/// With pivot subset `I = {i_1 < ... < i_k}`, column `j` of `V` at row `m` is the
/// coordinate of `I` with `i_j` replaced by `m` (signed by the re-sort), divided
/// by `p_I`; the first column is then rescaled by `p_I` so the re-encoded wedge
/// equals `p` and not just a multiple of it.
pub fn wedge_decode<T: Scalar>(p: &WedgeVector<T>, tol: &TolerancePolicy) -> Result<Matrix<T>> {
    let (n, k) = (p.ambient, p.grade);
    if k == 0 {
        return Err(Error::domain("cannot decode a grade-0 wedge"));
    }
    let scale = p.max_abs();
    if p.coords.iter().all(|c| tol.is_zero(c, 0.0)) {
        return Err(Error::ZeroWedge);
    }
    let pivot_rank = if T::EXACT {
        p.coords.iter().position(|c| !c.is_zero())
    } else {
        p.coords
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))
            .map(|(r, _)| r)
    }
    .ok_or(Error::ZeroWedge)?;
    let pivot_set = IndexSubset::unrank(n, k, pivot_rank)?;
    let pivot = p.coords[pivot_rank].clone();
    let inv = T::one() / pivot.clone();

    let mut v = Matrix::zeros(n, k);
    for j in 0..k {
        for m in 1..=n {
            if let Some((subset, sign)) = pivot_set.replace_at(j, m) {
                let c = p.coord(&subset).clone() * inv.clone();
                v[(m - 1, j)] = if sign < 0 { -c } else { c };
            }
        }
    }
    for m in 0..n {
        v[(m, 0)] = v[(m, 0)].clone() * pivot.clone();
    }

    let reencoded = wedge_encode(&v)?;
    let residual = reencoded
        .coords
        .iter()
        .zip(&p.coords)
        .map(|(a, b)| (a.clone() - b.clone()).magnitude())
        .fold(0.0, f64::max);
    if !tol.negligible::<T>(residual, scale) {
        return Err(Error::NotDecomposable { residual });
    }
    Ok(v)
}
