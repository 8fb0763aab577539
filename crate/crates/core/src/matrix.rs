//! Dense row-major matrices over a [`Scalar`] kernel.
//!
//! Storage and element access are 0-based. Index subsets used for minors are
//! 1-based [`IndexSubset`]s.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::combinatorics::IndexSubset;
use crate::error::{Error, Result};
use crate::scalar::{ExactComplex, Scalar, TolerancePolicy};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: m,
            cols: n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer entries, mainly for tests and examples.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<T>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
            .collect();
        Self::from_rows(data).expect("rectangular integer rows")
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                T::zero()
            }
        })
    }

    /// Column vector (n x 1).
    pub fn column_vector(entries: Vec<T>) -> Self {
        let n = entries.len();
        Matrix {
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<T>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::Shape("columns of unequal length".into()));
        }
        Ok(Self::from_fn(n, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        (i < self.rows && j < self.cols).then(|| &self.data[i * self.cols + j])
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_float(&self) -> Matrix<Complex64> {
        self.map(Scalar::to_c64)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: &T) -> Self {
        self.map(|v| v.clone() * factor.clone())
    }

    pub fn checked_mul(&self, rhs: &Matrix<T>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(l, j)].clone();
                    let slot = &mut out[(i, j)];
                    *slot = slot.clone() + prod;
                }
            }
        }
        Ok(out)
    }

    /// `A x` for a plain vector.
    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| {
                    acc + self[(i, j)].clone() * x[j].clone()
                })
            })
            .collect())
    }

    /// `u v^T`.
    pub fn outer(u: &[T], v: &[T]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i].clone() * v[j].clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Largest entry modulus (0 for an empty matrix).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix<T>) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }

    /// All entries zero: identically (exact) or below `tol` at `scale` (float).
    pub fn is_zero(&self, tol: &TolerancePolicy, scale: f64) -> bool {
        self.data.iter().all(|v| tol.is_zero(v, scale))
    }

    /// `A - lambda I`.
    pub fn shift(&self, lambda: &T) -> Result<Self> {
        self.require_square("shift")?;
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] = out[(i, i)].clone() - lambda.clone();
        }
        Ok(out)
    }

    pub(crate) fn require_square(&self, op: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{op} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Submatrix on 1-based row and column subsets.
    pub fn submatrix(&self, rows: &IndexSubset, cols: &IndexSubset) -> Result<Self> {
        if rows.ambient() > self.rows
            || cols.ambient() > self.cols
            || rows.elements().last().is_some_and(|&r| r > self.rows)
            || cols.elements().last().is_some_and(|&c| c > self.cols)
        {
            return Err(Error::domain(format!(
                "index subsets {rows} x {cols} out of range for a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let r: Vec<usize> = rows.offsets().collect();
        let c: Vec<usize> = cols.offsets().collect();
        Ok(Self::from_fn(r.len(), c.len(), |i, j| {
            self[(r[i], c[j])].clone()
        }))
    }

    /// Determinant by elimination: fraction-free (Bareiss) in the exact
    /// kernel, partial pivoting in the floating kernel.
    pub fn determinant(&self) -> Result<T> {
        self.require_square("determinant")?;
        Ok(if T::EXACT {
            bareiss_det(self.clone())
        } else {
            pivoted_det(self.clone())
        })
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self, tol: &TolerancePolicy) -> (Self, Vec<usize>) {
        let scale = self.max_abs();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = choose_pivot(&m, row, col, tol, scale) else {
                for i in row..self.rows {
                    m[(i, col)] = T::zero();
                }
                continue;
            };
            m.swap_rows(row, p);
            let inv = T::one() / m[(row, col)].clone();
            for j in col..self.cols {
                m[(row, j)] = m[(row, j)].clone() * inv.clone();
            }
            m[(row, col)] = T::one();
            for i in 0..self.rows {
                if i == row || m[(i, col)].is_zero() {
                    continue;
                }
                let factor = m[(i, col)].clone();
                for j in col..self.cols {
                    let delta = factor.clone() * m[(row, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - delta;
                }
                m[(i, col)] = T::zero();
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, tol: &TolerancePolicy) -> usize {
        self.rref(tol).1.len()
    }

    /// Basis of the right kernel as the columns of an `n x d` matrix.
    ///
    /// One generator per free column of the reduced row echelon form: the
    /// free variable is set to 1, the other free variables to 0.
    pub fn kernel_basis(&self, tol: &TolerancePolicy) -> Self {
        let (r, pivots) = self.rref(tol);
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(n, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = T::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                basis[(pcol, k)] = -r[(prow, f)].clone();
            }
        }
        basis
    }

    /// Inverse by Gauss-Jordan elimination; singular input is a domain error.
    pub fn inverse(&self, tol: &TolerancePolicy) -> Result<Self> {
        self.require_square("inverse")?;
        let n = self.rows;
        let scale = self.max_abs();
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = choose_pivot(&m, col, col, tol, scale)
                .ok_or_else(|| Error::domain("matrix is singular"))?;
            m.swap_rows(col, p);
            inv.swap_rows(col, p);
            let d = T::one() / m[(col, col)].clone();
            for j in 0..n {
                m[(col, j)] = m[(col, j)].clone() * d.clone();
                inv[(col, j)] = inv[(col, j)].clone() * d.clone();
            }
            for i in 0..n {
                if i == col || m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone();
                for j in 0..n {
                    let dm = f.clone() * m[(col, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - dm;
                    let di = f.clone() * inv[(col, j)].clone();
                    inv[(i, j)] = inv[(i, j)].clone() - di;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Row index of the pivot for `col` among rows `from..`: largest modulus
/// (float) or first nonzero (exact).
fn choose_pivot<T: Scalar>(
    m: &Matrix<T>,
    from: usize,
    col: usize,
    tol: &TolerancePolicy,
    scale: f64,
) -> Option<usize> {
    if T::EXACT {
        (from..m.rows).find(|&i| !m[(i, col)].is_zero())
    } else {
        let (best, mag) = (from..m.rows)
            .map(|i| (i, m[(i, col)].magnitude()))
            .fold((from, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        (mag >= 0.0 && mag > tol.threshold(scale)).then_some(best)
    }
}

fn bareiss_det<T: Scalar>(mut m: Matrix<T>) -> T {
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num =
                    m[(i, j)].clone() * m[(k, k)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                m[(i, j)] = num / prev.clone();
            }
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn pivoted_det<T: Scalar>(mut m: Matrix<T>) -> T {
    let n = m.rows;
    let mut det = T::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&a, &b| m[(a, k)].magnitude().total_cmp(&m[(b, k)].magnitude()))
            .expect("non-empty pivot range");
        if m[(p, k)].is_zero() {
            return T::zero();
        }
        if p != k {
            m.swap_rows(k, p);
            det = -det;
        }
        let pivot = m[(k, k)].clone();
        det = det * pivot.clone();
        for i in k + 1..n {
            let f = m[(i, k)].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let d = f.clone() * m[(k, j)].clone();
                m[(i, j)] = m[(i, j)].clone() - d;
            }
        }
    }
    det
}

/// Determinant of the submatrix on 1-based `rows` x `cols`.
pub fn submatrix_det<T: Scalar>(
    a: &Matrix<T>,
    rows: &IndexSubset,
    cols: &IndexSubset,
) -> Result<T> {
    if rows.len() != cols.len() {
        return Err(Error::domain(format!(
            "minor needs equal row and column counts, got {} and {}",
            rows.len(),
            cols.len()
        )));
    }
    if rows.is_empty() {
        return Err(Error::domain("minor of size 0"));
    }
    a.submatrix(rows, cols)?.determinant()
}

/// Largest dimension accepted by [`det_laplace`].
pub const LAPLACE_LIMIT: usize = 8;

/// Determinant by full permutation expansion. Factorial cost; intended as an
/// independent oracle for small matrices.
pub fn det_laplace<T: Scalar>(a: &Matrix<T>) -> Result<T> {
    a.require_square("det_laplace")?;
    let n = a.rows();
    if n > LAPLACE_LIMIT {
        return Err(Error::Size {
            op: "det_laplace",
            n,
            limit: LAPLACE_LIMIT,
        });
    }
    // Heap's algorithm: every generated permutation differs from the previous by one swap.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut positive = true;
    let term = |perm: &[usize]| {
        perm.iter()
            .enumerate()
            .fold(T::one(), |acc, (i, &p)| acc * a[(i, p)].clone())
    };
    let mut total = term(&perm);
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            positive = !positive;
            let t = term(&perm);
            total = if positive { total + t } else { total - t };
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}

/// Factor a rank-1 matrix as `x y^T`.
///
/// The pivot is the entry of largest modulus; `x` is its column and `y` its
/// row divided by the pivot, so every residual entry `M_ij - x_i y_j` is a
/// 2x2 minor through the pivot divided by the pivot.
pub fn rank1_factor<T: Scalar>(m: &Matrix<T>, tol: &TolerancePolicy) -> Result<(Vec<T>, Vec<T>)> {
    let scale = m.max_abs();
    if m.entries().iter().all(|v| tol.is_zero(v, 0.0)) {
        return Err(Error::ZeroMatrix);
    }
    let (mut pr, mut pc, mut best) = (0, 0, -1.0);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let mag = m[(i, j)].magnitude();
            if mag > best {
                (pr, pc, best) = (i, j, mag);
            }
        }
    }
    let pivot = m[(pr, pc)].clone();
    let x = m.column(pc);
    let y: Vec<T> = m.row(pr).into_iter().map(|v| v / pivot.clone()).collect();
    let residual = m.max_abs_diff(&Matrix::outer(&x, &y));
    if !tol.negligible::<T>(residual, scale) {
        return Err(Error::RankTooHigh { residual });
    }
    Ok((x, y))
}

/// Bilinear pairing `a^T b` (no conjugation).
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn max_abs_vec<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(Scalar::magnitude).fold(0.0, f64::max)
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(rhs).expect("conformable matrices")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + rhs[(i, j)].clone()
        })
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - rhs[(i, j)].clone()
        })
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|v| -v.clone())
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)].to_text())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Matrix in either kernel, as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Exact(Matrix<ExactComplex>),
    Float(Matrix<Complex64>),
}

impl AnyMatrix {
    pub fn mode(&self) -> &'static str {
        match self {
            AnyMatrix::Exact(_) => ExactComplex::MODE,
            AnyMatrix::Float(_) => Complex64::MODE,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Exact(m) => (m.rows(), m.cols()),
            AnyMatrix::Float(m) => (m.rows(), m.cols()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::lex_subsets;
    use crate::scalar::ratio;

    type Q = ExactComplex;
    type F = Complex64;

    fn set(n: usize, e: &[usize]) -> IndexSubset {
        IndexSubset::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn submatrix_det_examples() {
        let a = Matrix::<Q>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let all = set(2, &[1, 2]);
        assert_eq!(submatrix_det(&a, &all, &all).unwrap(), Q::from_i64(-2));
        assert_eq!(
            submatrix_det(&a, &set(2, &[1]), &set(2, &[2])).unwrap(),
            Q::from_i64(2)
        );
        let i3 = Matrix::<Q>::identity(3);
        for s in lex_subsets(3, 2).unwrap() {
            assert_eq!(submatrix_det(&i3, &s, &s).unwrap(), Q::one());
        }
        assert!(submatrix_det(&a, &set(2, &[1]), &all).is_err());
        assert!(submatrix_det(&a, &set(3, &[3]), &set(2, &[1])).is_err());

        let af = a.to_float();
        let d = submatrix_det(&af, &all, &all).unwrap();
        assert!((d - F::new(-2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn laplace_examples() {
        assert_eq!(det_laplace(&Matrix::<Q>::identity(4)).unwrap(), Q::one());
        let a = Matrix::<Q>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(det_laplace(&a).unwrap(), Q::from_i64(-2));
        let d = Matrix::<Q>::diagonal(&[Q::from_i64(1), Q::from_i64(2), Q::from_i64(3)]);
        assert_eq!(det_laplace(&d).unwrap(), Q::from_i64(6));
        assert!(matches!(
            det_laplace(&Matrix::<Q>::identity(9)),
            Err(Error::Size { .. })
        ));
        assert!(det_laplace(&Matrix::<Q>::zeros(2, 3)).is_err());
        assert_eq!(det_laplace(&Matrix::<Q>::zeros(0, 0)).unwrap(), Q::one());
    }

    #[test]
    fn bareiss_handles_zero_leading_pivot() {
        let a = Matrix::<Q>::from_i64_rows(&[&[0, 1, 2], &[3, 0, 1], &[4, 5, 0]]);
        assert_eq!(a.determinant().unwrap(), det_laplace(&a).unwrap());
        let s = Matrix::<Q>::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert_eq!(s.determinant().unwrap(), Q::zero());
    }

    #[test]
    fn kernel_examples() {
        let tol = TolerancePolicy::default();
        let d = Matrix::<Q>::diagonal(&[Q::zero(), Q::zero(), Q::from_i64(3)]);
        let k = d.kernel_basis(&tol);
        assert_eq!(k.cols(), 2);
        assert_eq!(k.column(0), vec![Q::one(), Q::zero(), Q::zero()]);
        assert_eq!(k.column(1), vec![Q::zero(), Q::one(), Q::zero()]);

        assert_eq!(Matrix::<Q>::identity(3).kernel_basis(&tol).cols(), 0);

        let a = Matrix::<Q>::from_i64_rows(&[&[0, 1], &[0, 1]]);
        let k = a.kernel_basis(&tol);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![Q::one(), Q::zero()]);

        let af = Matrix::<F>::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let kf = af.kernel_basis(&tol);
        assert_eq!(kf.cols(), 2);
        assert!((&af * &kf).max_abs() < 1e-12);
    }

    #[test]
    fn rank1_examples() {
        let tol = TolerancePolicy::default();
        let m = Matrix::<Q>::from_i64_rows(&[&[2, 4], &[1, 2]]);
        let (x, y) = rank1_factor(&m, &tol).unwrap();
        assert_eq!(Matrix::outer(&x, &y), m);
        // pivot is the 4 at (1,2): x = (4,2), y = (1/2, 1)
        assert_eq!(x, vec![Q::from_i64(4), Q::from_i64(2)]);
        assert_eq!(y, vec![ratio(1, 2), Q::one()]);

        let mut e11 = Matrix::<Q>::zeros(3, 3);
        e11[(0, 0)] = Q::one();
        let (x, y) = rank1_factor(&e11, &tol).unwrap();
        assert_eq!(x, vec![Q::one(), Q::zero(), Q::zero()]);
        assert_eq!(y, vec![Q::one(), Q::zero(), Q::zero()]);

        assert!(matches!(
            rank1_factor(&Matrix::<Q>::identity(2), &tol),
            Err(Error::RankTooHigh { .. })
        ));
        assert!(matches!(
            rank1_factor(&Matrix::<Q>::zeros(2, 2), &tol),
            Err(Error::ZeroMatrix)
        ));

        let mf = m.to_float();
        let (x, y) = rank1_factor(&mf, &tol).unwrap();
        assert!(Matrix::outer(&x, &y).max_abs_diff(&mf) < 1e-14);
        assert!(rank1_factor(&Matrix::<F>::identity(2), &tol).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let tol = TolerancePolicy::default();
        let a = Matrix::<Q>::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse(&tol).unwrap();
        assert_eq!(&a * &inv, Matrix::identity(3));
        assert!(Matrix::<Q>::from_i64_rows(&[&[1, 2], &[2, 4]])
            .inverse(&tol)
            .is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(Matrix::<Q>::new(2, 2, vec![Q::one(); 3]).is_err());
        let a = Matrix::<Q>::zeros(2, 3);
        assert!(a.checked_mul(&a).is_err());
        assert!(a.determinant().is_err());
    }
}
