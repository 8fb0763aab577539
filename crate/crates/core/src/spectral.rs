//! Characteristic polynomials, their derivatives, roots and multiplicities.
//!
//! `P(λ) = det(A - λI) = Σ_k (-λ)^k tr adj_k(A)`, and the j-th derivative is
//! `P^(j)(λ) = (-1)^j j! tr adj_j(A - λI)`. The Faddeev-LeVerrier recursion is
//! kept as an independent route to the same coefficients.
//!
//! Simplicity reading: `λ` is an algebraically simple eigenvalue exactly when
//! `tr adj(A - λI) = -P'(λ)` is nonzero (see [`is_algebraically_simple`]).

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::lex_subsets;
use crate::compound::higher_adjugate;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{ExactComplex, Scalar, TolerancePolicy};

/// `P(λ) = Σ a_k λ^k` with `a_0 = det A` and `a_n = (-1)^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> CharPoly<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("polynomial needs at least one coefficient"));
        }
        Ok(CharPoly { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_0, ..., a_n`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn eval(&self, x: &T) -> T {
        horner(&self.coeffs, x)
    }

    pub fn to_float(&self) -> CharPoly<Complex64> {
        CharPoly {
            coeffs: self.coeffs.iter().map(Scalar::to_c64).collect(),
        }
    }
}

fn horner<T: Scalar>(coeffs: &[T], x: &T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Coefficients via adjugate traces: `a_k = (-1)^k tr adj_k(A)`.
pub fn charpoly_via_adjugates<T: Scalar>(a: &Matrix<T>) -> Result<CharPoly<T>> {
    a.require_square("charpoly")?;
    let n = a.rows();
    if n == 0 {
        return Err(Error::domain("characteristic polynomial of a 0x0 matrix"));
    }
    let coeffs = (0..=n)
        .map(|k| {
            let t = higher_adjugate(a, k)?.trace();
            Ok(if k % 2 == 0 { t } else { -t })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharPoly { coeffs })
}

/// Coefficients via the Faddeev-LeVerrier trace recursion.
pub fn charpoly_faddeev<T: Scalar>(a: &Matrix<T>) -> Result<CharPoly<T>> {
    a.require_square("charpoly_faddeev")?;
    let n = a.rows();
    if n == 0 {
        return Err(Error::domain("characteristic polynomial of a 0x0 matrix"));
    }
    // c: coefficients of det(λI - A), c[n] = 1
    let mut c = vec![T::zero(); n + 1];
    c[n] = T::one();
    let mut m = Matrix::<T>::identity(n);
    for k in 1..=n {
        if k > 1 {
            m = &(a * &m) + &Matrix::identity(n).scale(&c[n - k + 1]);
        }
        let am = a * &m;
        c[n - k] = -(am.trace() / T::from_usize(k));
    }
    let coeffs = if n.is_multiple_of(2) {
        c
    } else {
        c.into_iter().map(|v| -v).collect()
    };
    Ok(CharPoly { coeffs })
}

/// `P^(j)(λ) = (-1)^j j! tr adj_j(A - λI)` for `1 <= j <= n`.
pub fn jacobi_derivative<T: Scalar>(a: &Matrix<T>, lambda: &T, j: usize) -> Result<T> {
    a.require_square("jacobi_derivative")?;
    let n = a.rows();
    if j == 0 || j > n {
        return Err(Error::domain(format!(
            "derivative order {j} out of range 1..={n}"
        )));
    }
    let t = higher_adjugate(&a.shift(lambda)?, j)?.trace();
    let scaled = t * falling_factorial::<T>(j, j);
    Ok(if j.is_multiple_of(2) { scaled } else { -scaled })
}

/// `k (k-1) ... (k-j+1)` as a scalar.
fn falling_factorial<T: Scalar>(k: usize, j: usize) -> T {
    (0..j).fold(T::one(), |acc, i| acc * T::from_usize(k - i))
}

/// `P^(j)(λ)` by differentiating the coefficients and Horner evaluation.
pub fn poly_derivative_eval<T: Scalar>(p: &CharPoly<T>, j: usize, lambda: &T) -> Result<T> {
    let n = p.degree();
    if j > n {
        return Ok(T::zero());
    }
    let derived: Vec<T> = (j..=n)
        .map(|k| p.coeffs[k].clone() * falling_factorial::<T>(k, j))
        .collect();
    Ok(horner(&derived, lambda))
}

/// `λ` is algebraically simple iff `tr adj(A - λI) ≠ 0`, i.e. `P'(λ) ≠ 0`.
///
/// For `n = 1` the adjugate is `[1]` and every eigenvalue is simple.
pub fn is_algebraically_simple<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    tol: &TolerancePolicy,
) -> Result<bool> {
    let adj = higher_adjugate(&a.shift(lambda)?, 1)?;
    let t = adj.trace();
    Ok(!tol.is_zero(&t, adj.max_abs() * a.rows() as f64))
}

/// Options for root finding and clustering in the floating kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralOptions {
    /// Residual tolerance for [`aberth_roots`].
    pub root_tol: f64,
    pub max_iter: usize,
    /// Distance threshold (relative to `max(1, max |root|)`) below which two
    /// roots are always merged. `None` means `max(1e-6, 1e3 * root_tol)`.
    pub cluster_tol: Option<f64>,
    /// Zero and rank decisions on `A - λI` and its adjugates.
    pub tolerance: TolerancePolicy,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            root_tol: 1e-12,
            max_iter: 500,
            cluster_tol: None,
            tolerance: TolerancePolicy::default(),
        }
    }
}

impl SpectralOptions {
    pub fn cluster_threshold(&self) -> f64 {
        self.cluster_tol
            .unwrap_or_else(|| (1e3 * self.root_tol).max(1e-6))
    }
}

const MAX_POLISH: usize = 400;

/// All roots of `p` (with multiplicity) by simultaneous Aberth-Ehrlich iteration.
///
/// Start points lie on the circle of radius `1 + max |a_k / a_n|` at angles
/// `2πi/n + 0.4`. Iteration stops once every root satisfies
/// `|P(z)| <= tol (1 + |z|)^n max |a_k|` and further sweeps stop improving.
pub fn aberth_roots(p: &CharPoly<Complex64>, tol: f64, max_iter: usize) -> Result<Vec<Complex64>> {
    let n = p.degree();
    let lead = p.coeffs[n];
    if n == 0 {
        return Err(Error::domain("root finding needs degree >= 1"));
    }
    if lead.norm() == 0.0
        || !p
            .coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    {
        return Err(Error::domain(
            "leading coefficient is zero or coefficients are not finite",
        ));
    }
    if n == 1 {
        return Ok(vec![-p.coeffs[0] / lead]);
    }
    let monic: Vec<Complex64> = p.coeffs.iter().map(|c| c / lead).collect();
    let deriv: Vec<Complex64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    let max_coeff = monic.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);

    let mut z: Vec<Complex64> = (0..n)
        .map(|i| Complex64::from_polar(radius, 2.0 * PI * i as f64 / n as f64 + 0.4))
        .collect();

    let residual_ok = |z: &Complex64| {
        horner(&monic, z).norm() <= tol * (1.0 + z.norm()).powi(n as i32) * max_coeff
    };
    let worst = |z: &[Complex64]| {
        z.iter()
            .map(|zi| horner(&monic, zi).norm() / ((1.0 + zi.norm()).powi(n as i32) * max_coeff))
            .fold(0.0, f64::max)
    };

    // Once every residual is small, keep sweeping: multiple roots converge
    // only linearly, so the iterates close in on them long after the
    // residual test passes. Stop at rounding level or when steps stall.
    let mut polishing = false;
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    let mut stalled = 0;
    let mut polish_sweeps = 0;
    for _ in 0..max_iter {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let pv = horner(&monic, &z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let dv = horner(&deriv, &z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = if dv.norm() == 0.0 {
                // flat point: fall back to the repulsion term alone
                -repulsion.inv() * 1e-3
            } else {
                let ratio = pv / dv;
                ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion)
            };
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if !polishing {
            polishing = z.iter().all(residual_ok);
            continue;
        }
        polish_sweeps += 1;
        if z.iter().all(residual_ok) {
            match &best {
                Some((b, _)) if max_step >= 0.9 * b => stalled += 1,
                _ => {
                    stalled = 0;
                    best = Some((max_step, z.clone()));
                }
            }
        }
        if max_step <= 4.0 * f64::EPSILON || stalled >= 8 || polish_sweeps >= MAX_POLISH {
            break;
        }
    }
    if let Some((_, zb)) = best {
        return Ok(zb);
    }
    if z.iter().all(residual_ok) {
        return Ok(z);
    }
    Err(Error::Convergence {
        iterations: max_iter,
        residual: worst(&z),
        best: z,
    })
}

/// Eigenvalue with its multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry<T> {
    pub eigenvalue: T,
    pub algebraic_multiplicity: usize,
    pub geometric_multiplicity: usize,
    /// Largest distance of a clustered root from the reported eigenvalue
    /// (zero in the exact kernel).
    pub cluster_radius: f64,
}

/// Rounding-noise bound on each coefficient of `det(A - λI)` in the floating
/// kernel: a multiple of machine epsilon times the Hadamard bounds of the
/// principal minors that make up the coefficient.
fn coefficient_noise(a: &Matrix<Complex64>) -> Vec<f64> {
    let n = a.rows();
    let mut noise = vec![0.0; n + 1];
    for size in 1..=n {
        let mut total = 0.0;
        for s in lex_subsets(n, size).expect("size <= n") {
            let idx: Vec<usize> = s.elements().iter().map(|e| e - 1).collect();
            let hadamard: f64 = idx
                .iter()
                .map(|&i| {
                    idx.iter()
                        .map(|&j| a[(i, j)].norm_sqr())
                        .sum::<f64>()
                        .sqrt()
                })
                .product();
            total += hadamard;
        }
        // principal minors of size `size` form coefficient n - size
        noise[n - size] = 16.0 * n as f64 * f64::EPSILON * total;
    }
    noise
}

/// Group roots into eigenvalue clusters and attach multiplicities.
///
/// Roots are merged by single linkage, and the dendrogram is cut top-down: a
/// node becomes a cluster when its merge distance is below the cluster
/// threshold, or when its root set `U` (centroid `c`, `m` roots) fits inside
/// the inclusion radius
/// `(n noise(c) / (|a_n| ∏_{j∉U} |c - z_j|))^(1/m)`, the distance by which an
/// m-fold root moves under the rounding error of the coefficients computed
/// from `A`, and no other root lies within twice the spread of `U`. Each
/// cluster reports its refined centre, its size as the algebraic
/// multiplicity, and the geometric multiplicity from adjugate ranks.
pub fn cluster_multiplicities(
    roots: &[Complex64],
    a: &Matrix<Complex64>,
    opts: &SpectralOptions,
) -> Result<Vec<SpectrumEntry<Complex64>>> {
    a.require_square("cluster_multiplicities")?;
    let n = roots.len();
    if n != a.rows() {
        return Err(Error::domain(format!(
            "{} roots for a {}x{} matrix",
            n,
            a.rows(),
            a.cols()
        )));
    }
    let p = charpoly_via_adjugates(a)?;
    let noise = coefficient_noise(a);
    let lead = p.coeffs[n].norm();
    let eta = |z: Complex64| -> f64 {
        noise
            .iter()
            .zip(p.coeffs())
            .enumerate()
            .map(|(k, (e, c))| {
                (e + 4.0 * n as f64 * f64::EPSILON * c.norm()) * z.norm().powi(k as i32)
            })
            .sum()
    };
    let fits = |members: &[usize]| -> bool {
        let m = members.len();
        let c = members.iter().map(|&i| roots[i]).sum::<Complex64>() / m as f64;
        let spread = members
            .iter()
            .map(|&i| (roots[i] - c).norm())
            .fold(0.0, f64::max);
        let distances: Vec<f64> = (0..n)
            .filter(|j| !members.contains(j))
            .map(|j| (c - roots[j]).norm())
            .collect();
        if distances.iter().any(|&d| d <= 2.0 * spread) {
            return false;
        }
        let outside = distances.iter().product::<f64>() * lead;
        let bound = (n as f64 * eta(c) / outside).powf(1.0 / m as f64);
        spread <= bound
    };
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let threshold = opts.cluster_threshold() * scale;
    // conjugate pairs closer than the threshold are merged anyway
    let real_input = a.entries().iter().all(|z| z.im == 0.0);

    // single-linkage dendrogram: leaves 0..n, merge nodes after
    let mut pairs: Vec<(f64, usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| ((roots[i] - roots[j]).norm(), i, j))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    // (members, merge distance, children)
    type Node = (Vec<usize>, f64, Option<(usize, usize)>);
    let mut nodes: Vec<Node> = (0..n).map(|i| (vec![i], 0.0, None)).collect();
    let mut top: Vec<usize> = (0..n).collect();
    for (d, i, j) in pairs {
        let (ti, tj) = (top[i], top[j]);
        if ti == tj {
            continue;
        }
        let mut members = nodes[ti].0.clone();
        members.extend_from_slice(&nodes[tj].0);
        let id = nodes.len();
        for &t in &members {
            top[t] = id;
        }
        nodes.push((members, d, Some((ti, tj))));
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = top
        .iter()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    while let Some(id) = stack.pop() {
        let (members, height, children) = &nodes[id];
        match children {
            Some((l, r)) if *height > threshold && !fits(members) => {
                stack.push(*l);
                stack.push(*r);
            }
            _ => groups.push(members.clone()),
        }
    }
    groups.sort();

    let mut out = Vec::with_capacity(groups.len());
    for g in groups {
        let m = g.len();
        let centroid = g.iter().map(|&i| roots[i]).sum::<Complex64>() / m as f64;
        let radius = g
            .iter()
            .map(|&i| (roots[i] - centroid).norm())
            .fold(0.0, f64::max);
        let mut eigenvalue = refine_cluster(&p, centroid, m, radius.max(threshold));
        if real_input && eigenvalue.im.abs() <= threshold {
            eigenvalue.im = 0.0;
        }
        let geo = geometric_multiplicity(a, &eigenvalue, &opts.tolerance)?;
        out.push(SpectrumEntry {
            eigenvalue,
            algebraic_multiplicity: m,
            geometric_multiplicity: geo,
            cluster_radius: radius,
        });
    }
    out.sort_by(|x, y| {
        x.eigenvalue
            .re
            .total_cmp(&y.eigenvalue.re)
            .then(x.eigenvalue.im.total_cmp(&y.eigenvalue.im))
    });
    Ok(out)
}

/// Sharpens the centroid of an m-fold cluster by Newton steps on `P^(m-1)`.
///
/// Aberth iterates around an m-fold root scatter by about `ε^(1/m)`, and so
/// does their mean. `P^(m-1)` has a simple root at the multiple eigenvalue, so
/// Newton on it converges to working precision. Steps that leave the cluster
/// are rejected and the plain centroid is kept.
fn refine_cluster(
    p: &CharPoly<Complex64>,
    centroid: Complex64,
    m: usize,
    radius: f64,
) -> Complex64 {
    if m < 2 {
        return centroid;
    }
    let mut z = centroid;
    for _ in 0..50 {
        let (Ok(f), Ok(df)) = (
            poly_derivative_eval(p, m - 1, &z),
            poly_derivative_eval(p, m, &z),
        ) else {
            return centroid;
        };
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        z -= step;
        if (z - centroid).norm() > 2.0 * radius {
            return centroid;
        }
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Full floating pipeline: adjugate-trace charpoly, Aberth roots, clustering.
pub fn float_spectrum(
    a: &Matrix<Complex64>,
    opts: &SpectralOptions,
) -> Result<Vec<SpectrumEntry<Complex64>>> {
    let p = charpoly_via_adjugates(a)?;
    let roots = aberth_roots(&p, opts.root_tol, opts.max_iter)?;
    cluster_multiplicities(&roots, a, opts)
}

/// Scale against which an entry of `adj_k(B)` is judged negligible: the
/// largest Hadamard-type bound `(max row norm)^(n-k)` of its minors.
pub(crate) fn adjugate_scale<T: Scalar>(b: &Matrix<T>, k: usize) -> f64 {
    let n = b.rows();
    let row_norm = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| b[(i, j)].magnitude().powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max);
    row_norm.powi((n - k) as i32)
}

/// Geometric multiplicity from adjugate ranks.
///
/// Returns `n` when `A - λI = 0`; otherwise the smallest `k` with
/// `adj_k(A - λI) ≠ 0`, which must have rank 1.
pub fn geometric_multiplicity<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    tol: &TolerancePolicy,
) -> Result<usize> {
    let b = a.shift(lambda)?;
    let n = b.rows();
    if n == 0 {
        return Err(Error::domain("empty matrix"));
    }
    if b.is_zero(tol, a.max_abs().max(lambda.magnitude())) {
        return Ok(n);
    }
    if b.rank(tol) == n {
        return Err(Error::NotEigenvalue);
    }
    for k in 1..n {
        let adj = higher_adjugate(&b, k)?;
        if adj.is_zero(tol, adjugate_scale(&b, k)) {
            continue;
        }
        return match adj.rank(tol) {
            1 => Ok(k),
            r => Err(Error::domain(format!(
                "first nonvanishing adjugate adj_{k} has rank {r}, expected 1"
            ))),
        };
    }
    // adj_{n-1}(B) holds the signed entries of B, nonzero here
    unreachable!("adj_(n-1) of a nonzero matrix vanished")
}

/// `n - rank(A - λI)`, the direct route.
pub fn geometric_multiplicity_by_rank<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    tol: &TolerancePolicy,
) -> Result<usize> {
    let b = a.shift(lambda)?;
    Ok(b.cols() - b.rank(tol))
}

/// Rational eigenvalues of a matrix with real rational characteristic polynomial.
///
/// Candidates are `±p/q` with `p | a_0'` and `q | a_n'` after clearing
/// denominators. Returns the rational spectrum and the degree of the
/// remaining factor without rational roots.
pub fn rational_spectrum(
    a: &Matrix<ExactComplex>,
) -> Result<(Vec<SpectrumEntry<ExactComplex>>, usize)> {
    const DIVISOR_LIMIT: u64 = 1_000_000_000_000;
    let p = charpoly_via_adjugates(a)?;
    if p.coeffs.iter().any(|c| !c.im.is_zero()) {
        return Err(Error::domain(
            "rational root search needs a real characteristic polynomial",
        ));
    }
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.re.denom()));
    let mut ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c.re.clone() * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();

    let mut found: Vec<(BigRational, usize)> = Vec::new();
    let mut zero_mult = 0;
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        found.push((BigRational::zero(), zero_mult));
    }

    let small = |x: &BigInt| x.abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT);
    if ints.len() > 1 {
        if let (Some(c0), Some(cn)) = (small(&ints[0]), small(ints.last().unwrap())) {
            let mut candidates: Vec<BigRational> = Vec::new();
            for num in divisors(c0) {
                for den in divisors(cn) {
                    let r = BigRational::new(BigInt::from(num), BigInt::from(den));
                    for cand in [r.clone(), -r] {
                        if !candidates.contains(&cand) {
                            candidates.push(cand);
                        }
                    }
                }
            }
            candidates.sort();
            let mut poly: Vec<BigRational> = ints
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            for cand in candidates {
                let mut mult = 0;
                while poly.len() > 1 {
                    let (quotient, rem) = synthetic_division(&poly, &cand);
                    if !rem.is_zero() {
                        break;
                    }
                    poly = quotient;
                    mult += 1;
                }
                if mult > 0 {
                    found.push((cand, mult));
                }
            }
            let remaining = poly.len() - 1;
            return finish_rational(a, found, remaining);
        }
    }
    let remaining = ints.len() - 1;
    finish_rational(a, found, remaining)
}

fn finish_rational(
    a: &Matrix<ExactComplex>,
    mut found: Vec<(BigRational, usize)>,
    remaining: usize,
) -> Result<(Vec<SpectrumEntry<ExactComplex>>, usize)> {
    found.sort_by(|x, y| x.0.cmp(&y.0));
    let tol = TolerancePolicy::default();
    let entries = found
        .into_iter()
        .map(|(r, alg)| {
            let lambda = ExactComplex::new(r, BigRational::zero());
            let geo = geometric_multiplicity(a, &lambda, &tol)?;
            Ok(SpectrumEntry {
                eigenvalue: lambda,
                algebraic_multiplicity: alg,
                geometric_multiplicity: geo,
                cluster_radius: 0.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((entries, remaining))
}

fn divisors(v: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= v {
        if v.is_multiple_of(d) {
            small.push(d);
            if d != v / d {
                large.push(v / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Divide `Σ c_k x^k` by `(x - r)`; returns quotient coefficients and remainder.
fn synthetic_division(coeffs: &[BigRational], r: &BigRational) -> (Vec<BigRational>, BigRational) {
    let n = coeffs.len() - 1;
    let mut quotient = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for k in (0..=n).rev() {
        let value = coeffs[k].clone() + carry.clone() * r.clone();
        if k == 0 {
            return (quotient, value);
        }
        quotient[k - 1] = value.clone();
        carry = value;
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    type Q = ExactComplex;
    type F = Complex64;

    fn qpoly(c: &[i64]) -> Vec<Q> {
        c.iter().map(|&x| Q::from_i64(x)).collect()
    }

    fn diag(v: &[i64]) -> Matrix<Q> {
        Matrix::diagonal(&qpoly(v))
    }

    #[test]
    fn charpoly_examples() {
        let a = Matrix::<Q>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let p = charpoly_via_adjugates(&a).unwrap();
        assert_eq!(p.coeffs(), qpoly(&[-2, -5, 1]).as_slice());
        assert_eq!(charpoly_faddeev(&a).unwrap(), p);

        let d = diag(&[1, 2, 3]);
        let expect = qpoly(&[6, -11, 6, -1]);
        assert_eq!(
            charpoly_via_adjugates(&d).unwrap().coeffs(),
            expect.as_slice()
        );
        assert_eq!(charpoly_faddeev(&d).unwrap().coeffs(), expect.as_slice());

        let z = Matrix::<Q>::zeros(3, 3);
        assert_eq!(
            charpoly_via_adjugates(&z).unwrap().coeffs(),
            qpoly(&[0, 0, 0, -1]).as_slice()
        );
        // (1 - λ)^4
        assert_eq!(
            charpoly_faddeev(&Matrix::<Q>::identity(4))
                .unwrap()
                .coeffs(),
            qpoly(&[1, -4, 6, -4, 1]).as_slice()
        );
        assert!(charpoly_via_adjugates(&Matrix::<Q>::zeros(2, 3)).is_err());
        assert!(charpoly_faddeev(&Matrix::<Q>::zeros(2, 3)).is_err());
    }

    #[test]
    fn jacobi_examples() {
        let d = diag(&[1, 2, 3]);
        assert_eq!(
            jacobi_derivative(&d, &Q::from_i64(0), 1).unwrap(),
            Q::from_i64(-11)
        );
        assert_eq!(
            jacobi_derivative(&d, &Q::from_i64(0), 2).unwrap(),
            Q::from_i64(12)
        );
        assert_eq!(
            jacobi_derivative(&d, &ratio(7, 3), 3).unwrap(),
            Q::from_i64(-6)
        );
        assert!(jacobi_derivative(&d, &Q::from_i64(0), 0).is_err());
        assert!(jacobi_derivative(&d, &Q::from_i64(0), 4).is_err());
    }

    #[test]
    fn poly_derivative_examples() {
        let p = CharPoly::from_coeffs(qpoly(&[-2, -5, 1])).unwrap();
        assert_eq!(
            poly_derivative_eval(&p, 1, &Q::from_i64(1)).unwrap(),
            Q::from_i64(-3)
        );
        assert_eq!(
            poly_derivative_eval(&p, 0, &Q::from_i64(2)).unwrap(),
            Q::from_i64(-8)
        );
        assert_eq!(
            poly_derivative_eval(&p, 3, &Q::from_i64(2)).unwrap(),
            Q::from_i64(0)
        );
        assert_eq!(
            poly_derivative_eval(&p, 2, &Q::from_i64(9)).unwrap(),
            Q::from_i64(2)
        );
    }

    fn sorted_re(mut r: Vec<F>) -> Vec<F> {
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        r
    }

    #[test]
    fn aberth_examples() {
        let p = CharPoly::from_coeffs(vec![F::new(2.0, 0.0), F::new(-3.0, 0.0), F::new(1.0, 0.0)])
            .unwrap();
        let r = sorted_re(aberth_roots(&p, 1e-12, 200).unwrap());
        assert!((r[0] - F::new(1.0, 0.0)).norm() < 1e-12);
        assert!((r[1] - F::new(2.0, 0.0)).norm() < 1e-12);

        // (1 - λ)^3
        let p = CharPoly::from_coeffs(
            [1.0, -3.0, 3.0, -1.0]
                .iter()
                .map(|&c| F::new(c, 0.0))
                .collect(),
        )
        .unwrap();
        let r = aberth_roots(&p, 1e-12, 500).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|z| (z - F::new(1.0, 0.0)).norm() < 1e-4));
        let sharp = refine_cluster(&p, r.iter().sum::<F>() / 3.0, 3, 1e-4);
        assert!((sharp - F::new(1.0, 0.0)).norm() < 1e-14);

        let p = CharPoly::from_coeffs(vec![F::new(3.0, 1.0), F::new(2.0, 0.0)]).unwrap();
        assert_eq!(
            aberth_roots(&p, 1e-12, 10).unwrap(),
            vec![F::new(-1.5, -0.5)]
        );

        let p = CharPoly::from_coeffs(vec![F::new(1.0, 0.0), F::new(0.0, 0.0)]).unwrap();
        assert!(aberth_roots(&p, 1e-12, 10).is_err());
    }

    #[test]
    fn aberth_reports_non_convergence() {
        let p = CharPoly::from_coeffs(
            (0..=7)
                .map(|k| F::new(k as f64 - 3.5, 1.0 / (k as f64 + 1.0)))
                .collect(),
        )
        .unwrap();
        match aberth_roots(&p, 1e-12, 1) {
            Err(Error::Convergence { best, residual, .. }) => {
                assert_eq!(best.len(), 7);
                assert!(residual > 0.0);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
        assert_eq!(aberth_roots(&p, 1e-12, 500).unwrap().len(), 7);
    }

    #[test]
    fn cluster_examples() {
        let opts = SpectralOptions::default();
        let a = diag(&[2, 2, 5]).to_float();
        let s = float_spectrum(&a, &opts).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s[0].eigenvalue - F::new(2.0, 0.0)).norm() < 1e-10);
        assert_eq!(
            (s[0].algebraic_multiplicity, s[0].geometric_multiplicity),
            (2, 2)
        );
        assert!((s[1].eigenvalue - F::new(5.0, 0.0)).norm() < 1e-10);
        assert_eq!(
            (s[1].algebraic_multiplicity, s[1].geometric_multiplicity),
            (1, 1)
        );

        let j = Matrix::<Q>::from_i64_rows(&[&[1, 1], &[0, 1]]).to_float();
        let s = float_spectrum(&j, &opts).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(
            (s[0].algebraic_multiplicity, s[0].geometric_multiplicity),
            (2, 1)
        );

        let s = float_spectrum(&diag(&[1, 2]).to_float(), &opts).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s
            .iter()
            .all(|e| e.algebraic_multiplicity == 1 && e.geometric_multiplicity == 1));
    }

    #[test]
    fn geometric_multiplicity_examples() {
        let tol = TolerancePolicy::default();
        assert_eq!(
            geometric_multiplicity(&diag(&[2, 2, 5]), &Q::from_i64(2), &tol).unwrap(),
            2
        );
        let j = Matrix::<Q>::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            geometric_multiplicity(&j, &Q::from_i64(1), &tol).unwrap(),
            1
        );
        let adj = higher_adjugate(&j.shift(&Q::from_i64(1)).unwrap(), 1).unwrap();
        assert_eq!(*adj, Matrix::from_i64_rows(&[&[0, -1], &[0, 0]]));
        let s = Matrix::<Q>::identity(3).scale(&Q::from_i64(4));
        assert_eq!(
            geometric_multiplicity(&s, &Q::from_i64(4), &tol).unwrap(),
            3
        );
        assert!(matches!(
            geometric_multiplicity(&diag(&[2, 2, 5]), &Q::from_i64(3), &tol),
            Err(Error::NotEigenvalue)
        ));
    }

    #[test]
    fn simplicity_reading() {
        let tol = TolerancePolicy::default();
        let a = Matrix::<Q>::from_i64_rows(&[&[1, 1], &[0, 2]]);
        assert!(is_algebraically_simple(&a, &Q::from_i64(1), &tol).unwrap());
        let j = Matrix::<Q>::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert!(!is_algebraically_simple(&j, &Q::from_i64(1), &tol).unwrap());
        assert!(!is_algebraically_simple(&diag(&[2, 2, 5]), &Q::from_i64(2), &tol).unwrap());
    }

    #[test]
    fn rational_spectrum_finds_multiplicities() {
        let (s, rest) = rational_spectrum(&diag(&[2, 2, 5, 0])).unwrap();
        assert_eq!(rest, 0);
        let summary: Vec<_> = s
            .iter()
            .map(|e| {
                (
                    e.eigenvalue.clone(),
                    e.algebraic_multiplicity,
                    e.geometric_multiplicity,
                )
            })
            .collect();
        assert_eq!(
            summary,
            vec![
                (Q::from_i64(0), 1, 1),
                (Q::from_i64(2), 2, 2),
                (Q::from_i64(5), 1, 1)
            ]
        );
        // λ² - 2 has no rational roots
        let a = Matrix::<Q>::from_i64_rows(&[&[0, 2], &[1, 0]]);
        let (s, rest) = rational_spectrum(&a).unwrap();
        assert!(s.is_empty());
        assert_eq!(rest, 2);
        let h = Matrix::<Q>::from_i64_rows(&[&[1, 0], &[0, 1]]).scale(&ratio(1, 2));
        let (s, _) = rational_spectrum(&h).unwrap();
        assert_eq!(s[0].eigenvalue, ratio(1, 2));
        assert_eq!(s[0].algebraic_multiplicity, 2);
    }
}
