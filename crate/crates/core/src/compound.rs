//! Compound matrices, higher adjugates and the determinant-of-a-sum expansion.
//!
//! Orientation of `adj_k`: the entry at `(I, J)` is
//! `(-1)^(ΣI + ΣJ) · det A[Jᶜ, Iᶜ]`, i.e. rows of the complement of `J` and
//! columns of the complement of `I`. At `k = 1` this is the classical adjugate
//! (transpose of the cofactor matrix), and for every `k`
//!
//! ```text
//! C_k(A) · adj_k(A) = adj_k(A) · C_k(A) = det(A) · I
//! adj_k(A)          = C_k(Δ) · Π · C_{n-k}(A)ᵀ · Πᵀ · C_k(Δ)ᵀ
//! ```
//!
//! `Π` sends the k-subset `K` to the (n-k)-subset `rev(K)ᶜ`, where `rev`
//! reflects indices `i -> n+1-i`. With lexicographic indexing on both sides
//! `Π` is the identity only when `k = 1` or `k = n-1`; for `n >= 4`,
//! `2 <= k <= n-2` the unpermuted product is a different matrix. The first
//! power of `det A` (not `det(A)^k`), the transpose and `Π` are all pinned by
//! brute-force tests against `det_laplace`.

use std::fmt;
use std::ops::Deref;

use crate::combinatorics::{binomial, lex_subsets, subset_sign, IndexSubset};
use crate::error::{Error, Result};
use crate::matrix::{submatrix_det, Matrix};
use crate::scalar::Scalar;

/// `C_k(A)`: all k x k minors, rows and columns in lexicographic subset order.
#[derive(Clone, PartialEq)]
pub struct CompoundMatrix<T> {
    source_dims: (usize, usize),
    grade: usize,
    matrix: Matrix<T>,
}

/// `adj_k(A)`: signed complementary minors of a square matrix.
#[derive(Clone, PartialEq)]
pub struct AdjugateMatrix<T> {
    source_dim: usize,
    grade: usize,
    matrix: Matrix<T>,
}

impl<T> CompoundMatrix<T> {
    pub fn source_dims(&self) -> (usize, usize) {
        self.source_dims
    }
    pub fn grade(&self) -> usize {
        self.grade
    }
    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }
}

impl<T> AdjugateMatrix<T> {
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }
    pub fn grade(&self) -> usize {
        self.grade
    }
    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }
}

impl<T: Scalar> fmt::Debug for CompoundMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C_{} of {:?}: {:?}",
            self.grade, self.source_dims, self.matrix
        )
    }
}

impl<T: Scalar> fmt::Debug for AdjugateMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "adj_{} of n={}: {:?}",
            self.grade, self.source_dim, self.matrix
        )
    }
}

impl<T> Deref for CompoundMatrix<T> {
    type Target = Matrix<T>;
    fn deref(&self) -> &Matrix<T> {
        &self.matrix
    }
}

impl<T> Deref for AdjugateMatrix<T> {
    type Target = Matrix<T>;
    fn deref(&self) -> &Matrix<T> {
        &self.matrix
    }
}

/// k-th compound matrix; `k = 0` gives the 1x1 matrix `[1]`.
pub fn compound<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<CompoundMatrix<T>> {
    let (m, n) = (a.rows(), a.cols());
    if k > m.min(n) {
        return Err(Error::domain(format!(
            "compound grade {k} out of range for a {m}x{n} matrix"
        )));
    }
    let matrix = if k == 0 {
        Matrix::identity(1)
    } else {
        let row_sets = lex_subsets(m, k)?;
        let col_sets = lex_subsets(n, k)?;
        let mut out = Matrix::zeros(row_sets.len(), col_sets.len());
        for (r, rs) in row_sets.iter().enumerate() {
            for (c, cs) in col_sets.iter().enumerate() {
                out[(r, c)] = submatrix_det(a, rs, cs)?;
            }
        }
        out
    };
    Ok(CompoundMatrix {
        source_dims: (m, n),
        grade: k,
        matrix,
    })
}

/// k-th adjugate, `0 <= k <= n`, with `adj_0(A) = [det A]` and `adj_n(A) = [1]`.
pub fn higher_adjugate<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<AdjugateMatrix<T>> {
    a.require_square("higher_adjugate")?;
    let n = a.rows();
    if n == 0 || k > n {
        return Err(Error::domain(format!(
            "adjugate grade {k} out of range for a {n}x{n} matrix"
        )));
    }
    let matrix = if k == 0 {
        Matrix::diagonal(&[a.determinant()?])
    } else if k == n {
        Matrix::identity(1)
    } else {
        let sets = lex_subsets(n, k)?;
        let complements: Vec<IndexSubset> = sets.iter().map(IndexSubset::complement).collect();
        let size = sets.len();
        let mut out = Matrix::zeros(size, size);
        for (ri, i_set) in sets.iter().enumerate() {
            for (rj, j_set) in sets.iter().enumerate() {
                let minor = submatrix_det(a, &complements[rj], &complements[ri])?;
                out[(ri, rj)] = if subset_sign(i_set, j_set)? < 0 {
                    -minor
                } else {
                    minor
                };
            }
        }
        out
    };
    Ok(AdjugateMatrix {
        source_dim: n,
        grade: k,
        matrix,
    })
}

/// Signed anti-diagonal `Δ_n` with `(i, j)` entry `(-1)^i δ_{i, n-j+1}` (1-based).
pub fn delta_matrix<T: Scalar>(n: usize) -> Result<Matrix<T>> {
    if n == 0 {
        return Err(Error::domain("delta matrix needs n >= 1"));
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        // 0-based: row i+1, column j+1; nonzero when i + j = n - 1
        if i + j + 1 == n {
            if (i + 1) % 2 == 0 {
                T::one()
            } else {
                -T::one()
            }
        } else {
            T::zero()
        }
    }))
}

/// Permutation `Π` matching the k-subset `K` (row) with the (n-k)-subset
/// `rev(K)ᶜ` (column), both in lexicographic rank.
pub fn reflected_complement_permutation<T: Scalar>(n: usize, k: usize) -> Result<Matrix<T>> {
    let sets = lex_subsets(n, k)?;
    let mut p = Matrix::zeros(sets.len(), sets.len());
    for (r, s) in sets.iter().enumerate() {
        let reflected: Vec<usize> = s.elements().iter().rev().map(|&i| n + 1 - i).collect();
        let target = IndexSubset::new(n, reflected)?.complement();
        p[(r, target.rank())] = T::one();
    }
    Ok(p)
}

/// Second route to `adj_k(A)` for `1 <= k <= n-1`, by conjugating the
/// transposed complementary compound with `C_k(Δ_n)` (see the module docs).
pub fn adjugate_via_delta<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<Matrix<T>> {
    a.require_square("adjugate_via_delta")?;
    let n = a.rows();
    if k == 0 || k >= n {
        return Err(Error::domain(format!(
            "delta conjugation needs 1 <= k <= n-1, got k = {k}, n = {n}"
        )));
    }
    let cd = compound(&delta_matrix::<T>(n)?, k)?;
    let p = reflected_complement_permutation::<T>(n, k)?;
    let inner = &(&p * &compound(a, n - k)?.transpose()) * &p.transpose();
    Ok(&(&*cd * &inner) * &cd.transpose())
}

/// `Σ_{k=0}^{n} tr(adj_k(A) · C_k(B))`, which equals `det(A + B)`.
pub fn det_sum<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T> {
    a.require_square("det_sum")?;
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::domain(format!(
            "det_sum needs equal shapes, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let mut total = T::zero();
    for k in 0..=n {
        let adj = higher_adjugate(a, k)?;
        let cb = compound(b, k)?;
        debug_assert_eq!(adj.rows(), binomial(n, k));
        total = total + (&*adj * &*cb).trace();
    }
    Ok(total)
}
