//! Eigenvector wedges from higher adjugates.
//!
//! For an eigenvalue `λ` whose geometric and algebraic multiplicities agree
//! (call both `k`), `adj_k(A - λI)` has rank one and factors as
//!
//! ```text
//! adj_k(A - λI) = s · v · wᵀ,   s = tr adj_k(A - λI) = (-1)^k P^(k)(λ) / k!
//! ```
//!
//! where `v = v_1 ∧ ... ∧ v_k` spans the right kernel, `w = w_1 ∧ ... ∧ w_k`
//! spans the left kernel and `w_i(v_j) = δ_ij`, so `⟨w, v⟩ = 1`.
//! `P(t) = det(A - tI)` throughout.

use num_complex::Complex64;

use crate::combinatorics::binomial;
use crate::compound::{compound, higher_adjugate};
use crate::error::{Error, Result};
use crate::exterior::{wedge_decode, wedge_encode, WedgeVector};
use crate::matrix::{dot, max_abs_vec, rank1_factor, Matrix};
use crate::scalar::{Scalar, TolerancePolicy};
use crate::spectral::{
    aberth_roots, adjugate_scale, charpoly_faddeev, charpoly_via_adjugates, geometric_multiplicity,
    jacobi_derivative, poly_derivative_eval, SpectralOptions,
};

/// Relative agreement required between the trace and polynomial routes to
/// `P^(k)(λ)` in the floating kernel.
const CROSS_CHECK_RTOL: f64 = 1e-8;

/// Everything [`recover_wedge`] reconstructs at one eigenvalue.
#[derive(Clone, Debug)]
pub struct RecoveryResult<T: Scalar> {
    pub eigenvalue: T,
    /// Common geometric and algebraic multiplicity `k`.
    pub multiplicity: usize,
    /// Right-kernel wedge; its largest (float) or first nonzero (exact)
    /// coordinate is 1.
    pub v: WedgeVector<T>,
    /// Left-kernel wedge with `⟨w, v⟩ = 1`.
    pub w: WedgeVector<T>,
    /// `(-1)^k P^(k)(λ) / k!`.
    pub scale: T,
    /// n x k, columns span `ker(A - λI)`.
    pub right_basis: Matrix<T>,
    /// n x k, columns span `ker(A - λI)ᵀ`, with `left_basisᵀ · right_basis = I`.
    pub left_basis: Matrix<T>,
    /// Max-entry absolute residual of `scale · v · wᵀ - adj_k(A - λI)`.
    pub residual: f64,
}

/// Biorthogonalize `W0` against `V`: returns `W = W0 · M` with `Wᵀ V = I_k`.
///
/// `M = (G⁻¹)ᵀ` with `G = W0ᵀ V`. Since `det G = ⟨wedge(W0), wedge(V)⟩`, the
/// wedge of the columns is unchanged whenever that pairing is already 1.
pub fn dual_basis<T: Scalar>(
    v: &Matrix<T>,
    w0: &Matrix<T>,
    tol: &TolerancePolicy,
) -> Result<Matrix<T>> {
    if v.rows() != w0.rows() || v.cols() != w0.cols() {
        return Err(Error::Shape(format!(
            "dual_basis needs equal shapes, got {}x{} and {}x{}",
            v.rows(),
            v.cols(),
            w0.rows(),
            w0.cols()
        )));
    }
    let g = &w0.transpose() * v;
    let g_inv = g.inverse(tol).map_err(|_| Error::Biorthogonality)?;
    Ok(w0 * &g_inv.transpose())
}

/// Entrywise conjugate: for a normal matrix, the conjugate of a right
/// eigenvector is a left eigenvector for the same eigenvalue.
pub fn normal_left_from_right<T: Scalar>(v: &[T]) -> Vec<T> {
    v.iter().map(Scalar::conj).collect()
}

/// Recover `v`, `w` and the scale at `λ`, detecting `k` from the adjugates.
///
/// `k` is the smallest grade with `adj_k(A - λI) ≠ 0`; when `A = λI` the
/// wedge machinery is skipped and the trivial `k = n` result is returned.
pub fn recover_wedge<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    tol: &TolerancePolicy,
) -> Result<RecoveryResult<T>> {
    let k = geometric_multiplicity(a, lambda, tol)?;
    recover_wedge_k(a, lambda, k, tol)
}

/// [`recover_wedge`] at a caller-supplied multiplicity `k`.
pub fn recover_wedge_k<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    k: usize,
    tol: &TolerancePolicy,
) -> Result<RecoveryResult<T>> {
    let b = a.shift(lambda)?;
    let n = b.rows();
    if k == 0 || k > n {
        return Err(Error::domain(format!(
            "multiplicity {k} out of range 1..={n}"
        )));
    }
    if k == n {
        return full_multiplicity(a, lambda, tol);
    }

    let m = higher_adjugate(&b, k)?.into_matrix();
    if m.is_zero(tol, adjugate_scale(&b, k)) {
        return Err(Error::MultiplicityTooLow { k });
    }
    let m_norm = m.max_abs();
    let (x, y) = rank1_factor(&m, tol)?;

    let c = m.trace();
    if tol.is_zero(&c, m_norm) {
        return Err(Error::DefectiveEigenvalue {
            k,
            trace: c.magnitude(),
        });
    }
    check_derivative(a, lambda, k, &c)?;

    let beta = pivot_entry(&x);
    let inv_beta = T::one() / beta.clone();
    let v: Vec<T> = x.iter().map(|xi| xi.clone() * inv_beta.clone()).collect();
    let factor = beta / c.clone();
    let w: Vec<T> = y.iter().map(|yi| yi.clone() * factor.clone()).collect();

    let ck = compound(&b, k)?.into_matrix();
    // C_k(B) itself is ~0 whenever rank B < k, so judge against its minors' bound
    let ck_norm = adjugate_scale(&b, n - k) * binomial(n, k) as f64;
    let right = max_abs_vec(&ck.mul_vec(&v)?);
    if !tol.negligible::<T>(right, ck_norm * max_abs_vec(&v)) {
        return Err(Error::domain(format!(
            "recovered v is not in ker C_{k}(A - lambda I) (residual {right:e})"
        )));
    }
    let left = max_abs_vec(&ck.transpose().mul_vec(&w)?);
    if !tol.negligible::<T>(left, ck_norm * max_abs_vec(&w)) {
        return Err(Error::domain(format!(
            "recovered w is not in ker C_{k}(A - lambda I)^T (residual {left:e})"
        )));
    }

    let v = WedgeVector::new(n, k, v)?;
    let w = WedgeVector::new(n, k, w)?;
    let right_basis = wedge_decode(&v, tol)?;
    let left_raw = wedge_decode(&w, tol)?;
    let left_basis = dual_basis(&right_basis, &left_raw, tol)?;

    let rebuilt = Matrix::outer(v.coords(), w.coords()).scale(&c);
    let residual = rebuilt.max_abs_diff(&m);
    Ok(RecoveryResult {
        eigenvalue: lambda.clone(),
        multiplicity: k,
        v,
        w,
        scale: c,
        right_basis,
        left_basis,
        residual,
    })
}

fn full_multiplicity<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    tol: &TolerancePolicy,
) -> Result<RecoveryResult<T>> {
    let n = a.rows();
    let b = a.shift(lambda)?;
    if !b.is_zero(tol, a.max_abs().max(lambda.magnitude())) {
        return Err(Error::domain(format!(
            "multiplicity {n} = n requires A = lambda I"
        )));
    }
    let unit = WedgeVector::new(n, n, vec![T::one()])?;
    Ok(RecoveryResult {
        eigenvalue: lambda.clone(),
        multiplicity: n,
        v: unit.clone(),
        w: unit,
        scale: T::one(),
        right_basis: Matrix::identity(n),
        left_basis: Matrix::identity(n),
        residual: 0.0,
    })
}

fn pivot_entry<T: Scalar>(x: &[T]) -> T {
    if T::EXACT {
        x.iter().find(|v| !v.is_zero()).cloned()
    } else {
        x.iter()
            .max_by(|p, q| p.magnitude().total_cmp(&q.magnitude()))
            .cloned()
    }
    .expect("rank-one factor has a nonzero column")
}

fn factorial<T: Scalar>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, i| acc * T::from_usize(i))
}

/// `(-1)^k P^(k)(λ) / k!` by the trace route and from Faddeev-LeVerrier
/// coefficients. Returns the relative disagreement of the polynomial route.
fn derivative_routes<T: Scalar>(a: &Matrix<T>, lambda: &T, k: usize) -> Result<(T, T, f64)> {
    let kf = factorial::<T>(k);
    let signed = |d: T| {
        let s = d / kf.clone();
        if k.is_multiple_of(2) {
            s
        } else {
            -s
        }
    };
    let trace_route = signed(jacobi_derivative(a, lambda, k)?);
    let p = charpoly_faddeev(a)?;
    let poly_route = signed(poly_derivative_eval(&p, k, lambda)?);

    // evaluation bound from |a_j| <= C(n, j) r^(n-j), r the largest row norm
    let n = a.rows();
    let r = adjugate_scale(a, n - 1);
    let lam = lambda.magnitude();
    let bound: f64 = (k..=n)
        .map(|j| {
            binomial(j, k) as f64
                * binomial(n, j) as f64
                * r.powi((n - j) as i32)
                * lam.powi((j - k) as i32)
        })
        .sum();
    let gap = (trace_route.clone() - poly_route.clone()).magnitude() / bound.max(f64::MIN_POSITIVE);
    Ok((trace_route, poly_route, gap))
}

fn check_derivative<T: Scalar>(a: &Matrix<T>, lambda: &T, k: usize, c: &T) -> Result<()> {
    let (trace_route, poly_route, gap) = derivative_routes(a, lambda, k)?;
    let agrees = if T::EXACT {
        trace_route == *c && poly_route == *c
    } else {
        gap <= CROSS_CHECK_RTOL
    };
    if agrees {
        Ok(())
    } else {
        Err(Error::DerivativeMismatch {
            trace_route: trace_route.to_text(),
            poly_route: poly_route.to_text(),
        })
    }
}

/// Residuals of the rank-one identity at one eigenvalue. All entries are
/// relative (divided by the natural scale of the quantity) and identically
/// zero in exact arithmetic.
#[derive(Clone, Debug)]
pub struct TheoremReport<T: Scalar> {
    pub result: RecoveryResult<T>,
    /// `max |scale · v wᵀ - adj_k| / max |adj_k|`.
    pub identity: f64,
    /// `|⟨w, v⟩ - 1|`.
    pub pairing: f64,
    /// `max |(A - λI) · right_basis| / (max |A - λI| · max |right_basis|)`.
    pub right_kernel: f64,
    /// Same for `(A - λI)ᵀ · left_basis`.
    pub left_kernel: f64,
    /// `max |left_basisᵀ · right_basis - I|`.
    pub biorthogonality: f64,
    /// Trace route against Faddeev-LeVerrier coefficients, relative to the
    /// coefficient bound.
    pub derivative: f64,
    /// Kernels decoded directly by elimination, biorthogonalized and
    /// re-wedged: `max |scale · v' w'ᵀ - adj_k| / max |adj_k|`.
    pub alternate: f64,
}

impl<T: Scalar> TheoremReport<T> {
    pub fn worst(&self) -> f64 {
        [
            self.identity,
            self.pairing,
            self.right_kernel,
            self.left_kernel,
            self.biorthogonality,
            self.derivative,
            self.alternate,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Run [`recover_wedge`] and measure every identity it is supposed to satisfy.
pub fn verify_theorem<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    tol: &TolerancePolicy,
) -> Result<TheoremReport<T>> {
    let result = recover_wedge(a, lambda, tol)?;
    let k = result.multiplicity;
    let n = a.rows();
    let b = a.shift(lambda)?;
    let m = if k == n {
        Matrix::identity(1)
    } else {
        higher_adjugate(&b, k)?.into_matrix()
    };
    let m_norm = m.max_abs().max(f64::MIN_POSITIVE);

    let pairing = (dot(result.w.coords(), result.v.coords()) - T::one()).magnitude();
    let kernel = |mat: &Matrix<T>, basis: &Matrix<T>| {
        let denom = (mat.max_abs() * basis.max_abs()).max(f64::MIN_POSITIVE);
        (mat * basis).max_abs() / denom
    };
    let right_kernel = kernel(&b, &result.right_basis);
    let left_kernel = kernel(&b.transpose(), &result.left_basis);
    let biorthogonality =
        (&result.left_basis.transpose() * &result.right_basis).max_abs_diff(&Matrix::identity(k));

    let (derivative, alternate) = if k == n {
        (0.0, 0.0)
    } else {
        let (_, _, gap) = derivative_routes(a, lambda, k)?;
        let v0 = b.kernel_basis(tol);
        let w0 = b.transpose().kernel_basis(tol);
        if v0.cols() != k || w0.cols() != k {
            return Err(Error::domain(format!(
                "elimination finds kernels of dimension {} and {}, adjugates give {k}",
                v0.cols(),
                w0.cols()
            )));
        }
        let w1 = dual_basis(&v0, &w0, tol)?;
        let v_alt = wedge_encode(&v0)?;
        let w_alt = wedge_encode(&w1)?;
        let rebuilt = Matrix::outer(v_alt.coords(), w_alt.coords()).scale(&result.scale);
        (gap, rebuilt.max_abs_diff(&m) / m_norm)
    };

    Ok(TheoremReport {
        identity: result.residual / m_norm,
        pairing,
        right_kernel,
        left_kernel,
        biorthogonality,
        derivative,
        alternate,
        result,
    })
}

/// Table of squared eigenvector component magnitudes of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianTable {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// `magnitudes[i][j] = |v_ij|²` for the unit eigenvector `v_i` of `λ_i`.
    pub magnitudes: Vec<Vec<f64>>,
}

/// `|v_ij|²` from principal minors, without computing eigenvectors.
///
/// The diagonal of `adj(A - λ_i I)` holds `det(M_j - λ_i I)` (`M_j` deletes
/// row and column `j`), and `|v_ij|² = adj(A - λ_i I)_jj / tr adj(A - λ_i I)`.
/// Eigenvalues come from Aberth on the adjugate-trace characteristic
/// polynomial, polished by Newton steps `λ += det(A - λI) / tr adj(A - λI)`.
pub fn hermitian_ev_magnitudes(
    a: &Matrix<Complex64>,
    opts: &SpectralOptions,
) -> Result<HermitianTable> {
    a.require_square("hermitian_ev_magnitudes")?;
    let n = a.rows();
    if n == 0 {
        return Err(Error::domain("empty matrix"));
    }
    let norm = a.max_abs();
    let deviation = a.max_abs_diff(&a.conj_transpose());
    if deviation > opts.tolerance.threshold(norm) {
        return Err(Error::NotHermitian { deviation });
    }
    if n == 1 {
        return Ok(HermitianTable {
            eigenvalues: vec![a[(0, 0)].re],
            magnitudes: vec![vec![1.0]],
        });
    }

    let p = charpoly_via_adjugates(a)?;
    let roots = aberth_roots(&p, opts.root_tol, opts.max_iter)?;
    let mut eigenvalues: Vec<f64> = roots
        .iter()
        .map(|z| polish_real(a, z.re))
        .collect::<Result<_>>()?;
    eigenvalues.sort_by(f64::total_cmp);

    let scale = eigenvalues.iter().fold(1.0, |m: f64, l| m.max(l.abs()));
    let threshold = opts.cluster_threshold() * scale;
    for pair in eigenvalues.windows(2) {
        if pair[1] - pair[0] <= threshold {
            return Err(Error::DegenerateSpectrum {
                near: Complex64::new(0.5 * (pair[0] + pair[1]), 0.0),
            });
        }
    }

    let mut magnitudes = Vec::with_capacity(n);
    for &lambda in &eigenvalues {
        let adj = higher_adjugate(&a.shift(&Complex64::new(lambda, 0.0))?, 1)?;
        let t = adj.trace();
        if opts.tolerance.is_zero(&t, adj.max_abs()) {
            return Err(Error::DegenerateSpectrum {
                near: Complex64::new(lambda, 0.0),
            });
        }
        magnitudes.push((0..n).map(|j| (adj[(j, j)] / t).re).collect());
    }
    Ok(HermitianTable {
        eigenvalues,
        magnitudes,
    })
}

fn polish_real(a: &Matrix<Complex64>, start: f64) -> Result<f64> {
    let mut lambda = start;
    for _ in 0..8 {
        let b = a.shift(&Complex64::new(lambda, 0.0))?;
        let det = b.determinant()?;
        let t = higher_adjugate(&b, 1)?.trace();
        if t.norm() == 0.0 {
            break;
        }
        // P(λ) = det(A - λI), P'(λ) = -tr adj(A - λI)
        let step = (det / t).re;
        lambda += step;
        if step.abs() <= 4.0 * f64::EPSILON * lambda.abs().max(1.0) {
            break;
        }
    }
    Ok(lambda)
}
