//! Randomized self-check over every identity the library relies on.
//!
//! Each check runs on seeded matrices from [`crate::testgen`] and records the
//! worst residual against its tolerance. Exact checks use tolerance 0.

use num_complex::Complex64;

use crate::combinatorics::binomial;
use crate::compound::{adjugate_via_delta, compound, det_sum, higher_adjugate};
use crate::error::Result;
use crate::exterior::{wedge_decode, wedge_encode};
use crate::matrix::{AnyMatrix, Matrix};
use crate::recovery::{hermitian_ev_magnitudes, recover_wedge, verify_theorem};
use crate::scalar::{ExactComplex, Scalar, TolerancePolicy};
use crate::spectral::{
    charpoly_faddeev, charpoly_via_adjugates, float_spectrum, geometric_multiplicity,
    geometric_multiplicity_by_rank, jacobi_derivative, poly_derivative_eval, rational_spectrum,
    SpectralOptions,
};
use crate::testgen::{MatrixGen, PlantedEigen};

type Q = ExactComplex;

/// Float theorem residual bound (max-entry, relative).
pub const THEOREM_FLOAT_TOL: f64 = 1e-8;
/// Hermitian table against independently recovered eigenvectors.
pub const HERMITIAN_TOL: f64 = 1e-8;
/// Hermitian row and column sums.
pub const HERMITIAN_SUM_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Random matrices per check.
    pub trials: usize,
    /// Largest dimension for the exact identity checks (planted families go
    /// one higher, up to 6).
    pub dim_max: usize,
    pub seed: u64,
    /// Perturb entry (1,1) of every planted matrix after construction, so the
    /// planted claims become false.
    pub corrupt: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: 40,
            dim_max: 5,
            seed: 1,
            corrupt: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub worst: f64,
    pub tolerance: f64,
    /// Description of the first failing case.
    pub first_failure: Option<String>,
}

impl CheckOutcome {
    fn new(name: &'static str, tolerance: f64) -> Self {
        CheckOutcome {
            name,
            cases: 0,
            failures: 0,
            worst: 0.0,
            tolerance,
            first_failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    fn residual(&mut self, value: f64, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if value.is_nan() || value > self.worst {
            self.worst = value;
        }
        if value.is_nan() || value > self.tolerance {
            self.fail(describe());
        }
    }

    fn verdict(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.residual(if ok { 0.0 } else { f64::INFINITY }, describe);
    }

    fn outcome<T>(&mut self, r: Result<T>, describe: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.worst = f64::INFINITY;
                let d = describe();
                self.fail(format!("{d}: {e}"));
                None
            }
        }
    }

    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(what);
        }
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let mut g = MatrixGen::new(cfg.seed);
    let dim = cfg.dim_max.max(1);
    let planted_dim = (dim + 1).clamp(2, 6);
    let tol = TolerancePolicy::default();
    let mut out = Vec::new();

    out.push(multiplicativity_check(&mut g, cfg.trials, dim));
    let mut rest = identity_checks(&mut g, cfg.trials, dim);
    out.append(&mut rest);
    out.push(jacobi_check(&mut g, cfg.trials, dim));
    out.push(rank_lemma_check(&mut g, planted_dim, cfg.corrupt));

    let eigen_family = planted_eigen_family(&mut g, cfg.trials, planted_dim, cfg.corrupt);
    let jordan_family = jordan_family(&mut g, planted_dim.min(5));
    out.push(theorem_exact_check(&eigen_family, &tol));
    out.push(theorem_float_check(&eigen_family, &tol));
    out.push(defective_check(&jordan_family, &tol));
    out.push(multiplicity_check(&eigen_family, &jordan_family, &tol));
    out.push(hermitian_check(
        &mut g,
        cfg.trials,
        (planted_dim + 2).min(8),
        &tol,
    ));
    out.push(wedge_check(&mut g, cfg.trials, planted_dim, &tol));
    out
}

fn describe_matrix<T: Scalar>(a: &Matrix<T>) -> String {
    let rows: Vec<String> = (0..a.rows())
        .map(|i| {
            let r: Vec<String> = a.row(i).iter().map(Scalar::to_text).collect();
            format!("[{}]", r.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn random_dim(g: &mut MatrixGen, dim: usize) -> usize {
    g.int(1, dim as i64) as usize
}

/// `C_k(AB) = C_k(A) C_k(B)` on rectangular factors.
fn multiplicativity_check(g: &mut MatrixGen, trials: usize, dim: usize) -> CheckOutcome {
    let mut c = CheckOutcome::new("compound multiplicativity", 0.0);
    for _ in 0..trials {
        let (m, p, q) = (random_dim(g, dim), random_dim(g, dim), random_dim(g, dim));
        let a = g.integer_matrix(m, p, 5);
        let b = g.integer_matrix(p, q, 5);
        let ab = &a * &b;
        for k in 0..=m.min(p).min(q) {
            let Some(lhs) = c.outcome(compound(&ab, k), || format!("k={k}")) else {
                continue;
            };
            let (Ok(ca), Ok(cb)) = (compound(&a, k), compound(&b, k)) else {
                continue;
            };
            let rhs = &*ca * &*cb;
            c.residual(lhs.max_abs_diff(&rhs), || {
                format!("k={k} A={} B={}", describe_matrix(&a), describe_matrix(&b))
            });
        }
    }
    c
}

fn identity_checks(g: &mut MatrixGen, trials: usize, dim: usize) -> Vec<CheckOutcome> {
    let mut product = CheckOutcome::new("product law C_k adj_k = det I", 0.0);
    let mut reversal = CheckOutcome::new("adjugate reversal", 0.0);
    let mut delta = CheckOutcome::new("delta conjugation", 0.0);
    let mut detsum = CheckOutcome::new("determinant of a sum", 0.0);
    let mut charpoly = CheckOutcome::new("characteristic polynomial routes", 0.0);
    for _ in 0..trials {
        let n = random_dim(g, dim);
        let a = g.integer_matrix(n, n, 5);
        let b = g.integer_matrix(n, n, 5);
        let show = || format!("A={} B={}", describe_matrix(&a), describe_matrix(&b));
        let Some(det) = product.outcome(a.determinant(), show) else {
            continue;
        };
        let ab = &a * &b;
        for k in 0..=n {
            let (Ok(ck), Ok(adj)) = (compound(&a, k), higher_adjugate(&a, k)) else {
                product.verdict(false, || format!("k={k} {}", show()));
                continue;
            };
            let id = Matrix::identity(binomial(n, k)).scale(&det);
            let r = (&*ck * &*adj)
                .max_abs_diff(&id)
                .max((&*adj * &*ck).max_abs_diff(&id));
            product.residual(r, || format!("k={k} {}", show()));

            if let (Ok(lhs), Ok(adj_b)) = (higher_adjugate(&ab, k), higher_adjugate(&b, k)) {
                reversal.residual(lhs.max_abs_diff(&(&*adj_b * &*adj)), || {
                    format!("k={k} {}", show())
                });
            }
            if 1 <= k && k < n {
                if let Some(via) = delta.outcome(adjugate_via_delta(&a, k), show) {
                    delta.residual(via.max_abs_diff(&adj), || format!("k={k} {}", show()));
                }
            }
        }
        if let Some(s) = detsum.outcome(det_sum(&a, &b), show) {
            let direct = (&a + &b).determinant().expect("square");
            detsum.residual((s - direct).magnitude(), show);
        }
        if let (Some(p1), Some(p2)) = (
            charpoly.outcome(charpoly_via_adjugates(&a), show),
            charpoly.outcome(charpoly_faddeev(&a), show),
        ) {
            charpoly.verdict(p1 == p2, show);
        }
    }
    vec![product, reversal, delta, detsum, charpoly]
}

/// `(-1)^j j! tr adj_j(A - λI)` against the j-th derivative of the
/// Faddeev-LeVerrier polynomial, at random rational `λ`.
fn jacobi_check(g: &mut MatrixGen, trials: usize, dim: usize) -> CheckOutcome {
    let mut c = CheckOutcome::new("derivative of the characteristic polynomial", 0.0);
    for _ in 0..trials {
        let n = random_dim(g, dim);
        let a = g.integer_matrix(n, n, 5);
        let Some(p) = c.outcome(charpoly_faddeev(&a), || describe_matrix(&a)) else {
            continue;
        };
        for _ in 0..3 {
            let lambda = g.rational(7, 4);
            for j in 1..=n {
                let show = || format!("j={j} λ={} A={}", lambda.to_text(), describe_matrix(&a));
                if let (Some(t), Some(d)) = (
                    c.outcome(jacobi_derivative(&a, &lambda, j), show),
                    c.outcome(poly_derivative_eval(&p, j, &lambda), show),
                ) {
                    c.residual((t - d).magnitude(), show);
                }
            }
        }
    }
    c
}

fn corrupt(a: &mut Matrix<Q>) {
    a[(0, 0)] = a[(0, 0)].clone() + Q::from_i64(1);
}

/// `adj_j A = 0` for `j < k` and `rank adj_j A = C(n-k, n-j)` for `j >= k`
/// when `A` has rank `n - k`.
fn rank_lemma_check(g: &mut MatrixGen, dim: usize, corrupted: bool) -> CheckOutcome {
    let tol = TolerancePolicy::default();
    let mut c = CheckOutcome::new("rank of higher adjugates", 0.0);
    for n in 1..=dim {
        for k in 0..=n {
            let mut a = g.planted_rank(n, n - k);
            if corrupted {
                corrupt(&mut a);
            }
            for j in 0..=n {
                let show = || format!("n={n} k={k} j={j} A={}", describe_matrix(&a));
                let Some(adj) = c.outcome(higher_adjugate(&a, j), show) else {
                    continue;
                };
                let expected = if j < k { 0 } else { binomial(n - k, n - j) };
                c.verdict(adj.rank(&tol) == expected, show);
            }
        }
    }
    c
}

fn planted_eigen_family(
    g: &mut MatrixGen,
    trials: usize,
    dim: usize,
    corrupted: bool,
) -> Vec<PlantedEigen> {
    let mut family = Vec::with_capacity(trials);
    for t in 0..trials {
        let n = 2 + t % (dim - 1);
        let k = 1 + g.index(n - 1);
        let mut p = g.planted_eigen(n, k);
        if corrupted {
            corrupt(&mut p.matrix);
        }
        family.push(p);
    }
    family
}

fn jordan_family(g: &mut MatrixGen, dim: usize) -> Vec<PlantedEigen> {
    let mut family = Vec::new();
    for n in 2..=dim {
        for m in 2..=n {
            for extra in 0..=(n - m) {
                family.push(g.jordan_embedded(n, m, extra));
            }
        }
    }
    family
}

fn theorem_exact_check(family: &[PlantedEigen], tol: &TolerancePolicy) -> CheckOutcome {
    let mut c = CheckOutcome::new("eigenvector wedge identity (exact)", 0.0);
    for p in family {
        let show = || {
            format!(
                "λ={} k={} A={}",
                p.eigenvalue.to_text(),
                p.geometric,
                describe_matrix(&p.matrix)
            )
        };
        if let Some(report) = c.outcome(verify_theorem(&p.matrix, &p.eigenvalue, tol), show) {
            let right_k = report.result.multiplicity == p.geometric;
            c.residual(
                if right_k {
                    report.worst()
                } else {
                    f64::INFINITY
                },
                show,
            );
        }
    }
    c
}

/// Same family in floating point, with `λ` taken from the computed spectrum.
fn theorem_float_check(family: &[PlantedEigen], tol: &TolerancePolicy) -> CheckOutcome {
    let mut c = CheckOutcome::new("eigenvector wedge identity (float)", THEOREM_FLOAT_TOL);
    let opts = SpectralOptions::default();
    for p in family {
        let a = p.matrix.to_float();
        let planted = p.eigenvalue.to_c64();
        let show = || {
            format!(
                "λ≈{planted} k={} A={}",
                p.geometric,
                describe_matrix(&p.matrix)
            )
        };
        let Some(spectrum) = c.outcome(float_spectrum(&a, &opts), show) else {
            continue;
        };
        let Some(entry) = spectrum.iter().min_by(|x, y| {
            (x.eigenvalue - planted)
                .norm()
                .total_cmp(&(y.eigenvalue - planted).norm())
        }) else {
            c.verdict(false, show);
            continue;
        };
        if entry.algebraic_multiplicity != p.algebraic || (entry.eigenvalue - planted).norm() > 1e-6
        {
            c.verdict(false, || {
                format!("spectrum missed the planted eigenvalue: {}", show())
            });
            continue;
        }
        if let Some(report) = c.outcome(verify_theorem(&a, &entry.eigenvalue, tol), show) {
            c.residual(report.worst(), show);
        }
    }
    c
}

/// A Jordan chain must stop recovery: the trace of the first nonvanishing
/// adjugate is zero.
fn defective_check(family: &[PlantedEigen], tol: &TolerancePolicy) -> CheckOutcome {
    let mut c = CheckOutcome::new("defective eigenvalue detection", 0.0);
    for p in family {
        let show = || {
            format!(
                "λ={} A={}",
                p.eigenvalue.to_text(),
                describe_matrix(&p.matrix)
            )
        };
        let refused = matches!(
            recover_wedge(&p.matrix, &p.eigenvalue, tol),
            Err(crate::error::Error::DefectiveEigenvalue { .. })
        );
        let trace_vanishes = p
            .matrix
            .shift(&p.eigenvalue)
            .and_then(|b| higher_adjugate(&b, p.geometric))
            .map(|adj| adj.trace().is_zero())
            .unwrap_or(false);
        c.verdict(refused && trace_vanishes, show);
    }
    c
}

fn multiplicity_check(
    eigen: &[PlantedEigen],
    jordan: &[PlantedEigen],
    tol: &TolerancePolicy,
) -> CheckOutcome {
    let mut c = CheckOutcome::new("geometric multiplicity routes", 0.0);
    for p in eigen.iter().chain(jordan) {
        let show = || {
            format!(
                "λ={} A={}",
                p.eigenvalue.to_text(),
                describe_matrix(&p.matrix)
            )
        };
        let by_adj = c.outcome(geometric_multiplicity(&p.matrix, &p.eigenvalue, tol), show);
        let by_rank = geometric_multiplicity_by_rank(&p.matrix, &p.eigenvalue, tol).ok();
        c.verdict(
            by_adj.is_some() && by_adj == by_rank && by_rank == Some(p.geometric),
            show,
        );
    }
    c
}

/// Minor-based `|v_ij|²` against eigenvectors recovered one eigenvalue at a
/// time, plus the doubly stochastic row and column sums.
fn hermitian_check(
    g: &mut MatrixGen,
    trials: usize,
    dim: usize,
    tol: &TolerancePolicy,
) -> CheckOutcome {
    let mut c = CheckOutcome::new("hermitian eigenvector magnitudes", HERMITIAN_TOL);
    let opts = SpectralOptions::default();
    for t in 0..trials {
        let n = 1 + t % dim;
        let h = g.hermitian(n, t % 2 == 1, 1e-3);
        let show = || format!("A={}", describe_matrix(&h.matrix));
        let Some(table) = c.outcome(hermitian_ev_magnitudes(&h.matrix, &opts), show) else {
            continue;
        };
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let row: f64 = table.magnitudes[i].iter().sum();
            let col: f64 = table.magnitudes.iter().map(|r| r[i]).sum();
            let sums = (row - 1.0).abs().max((col - 1.0).abs());
            if sums > HERMITIAN_SUM_TOL {
                worst = f64::INFINITY;
            }
            let lambda = Complex64::new(table.eigenvalues[i], 0.0);
            let Some(r) = c.outcome(recover_wedge(&h.matrix, &lambda, tol), show) else {
                worst = f64::INFINITY;
                continue;
            };
            let v = r.right_basis.column(0);
            let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            for (vj, m) in v.iter().zip(&table.magnitudes[i]) {
                worst = worst.max((vj.norm_sqr() / norm2 - m).abs());
            }
        }
        c.residual(worst, show);
    }
    c
}

/// encode -> decode -> encode is the identity on decomposable wedges.
fn wedge_check(
    g: &mut MatrixGen,
    trials: usize,
    dim: usize,
    tol: &TolerancePolicy,
) -> CheckOutcome {
    let mut c = CheckOutcome::new("wedge round trip", 0.0);
    for t in 0..trials {
        let n = 1 + t % dim;
        let k = 1 + g.index(n.min(3));
        let x = g.integer_matrix(n, k, 3);
        let show = || format!("X={}", describe_matrix(&x));
        let Some(p) = c.outcome(wedge_encode(&x), show) else {
            continue;
        };
        if p.is_zero() {
            continue;
        }
        let Some(v) = c.outcome(wedge_decode(&p, tol), show) else {
            continue;
        };
        if let Some(q) = c.outcome(wedge_encode(&v), show) {
            c.verdict(q == p, show);
        }
    }
    c
}

/// Relative tolerance for identities checked on a floating-point input file.
pub const FILE_FLOAT_TOL: f64 = 1e-9;

/// Identity checks on one user-supplied matrix `A`, pairing it with `Aᵀ`
/// where a second operand is needed, plus the eigenvector identity at every
/// eigenvalue the spectral module finds. In exact mode eigenvalues outside Q are
/// checked on the float copy.
pub fn check_matrix(a: &AnyMatrix) -> Vec<CheckOutcome> {
    let tol = TolerancePolicy::default();
    let opts = SpectralOptions::default();
    let mut multiplicity = CheckOutcome::new("geometric multiplicity routes", 0.0);
    match a {
        AnyMatrix::Exact(m) => {
            let mut out = identity_checks_on(m, 0.0);
            if !m.is_square() {
                return out;
            }
            let mut exact = CheckOutcome::new("eigenvector wedge identity", 0.0);
            let mut irrational = None;
            if let Some((entries, rest)) =
                exact.outcome(rational_spectrum(m), || "rational spectrum".into())
            {
                let eig: Vec<(ExactComplex, usize)> = entries
                    .iter()
                    .map(|e| (e.eigenvalue.clone(), e.algebraic_multiplicity))
                    .collect();
                eigen_checks_on(m, &eig, &mut multiplicity, &mut exact, &tol);
                if rest > 0 {
                    // eigenvalues outside Q are checked on the float copy
                    let mut float = CheckOutcome::new(
                        "eigenvector wedge identity (float, irrational eigenvalues)",
                        THEOREM_FLOAT_TOL,
                    );
                    let mf = m.to_float();
                    if let Some(spectrum) =
                        float.outcome(float_spectrum(&mf, &opts), || "spectrum".into())
                    {
                        let rational: Vec<Complex64> =
                            eig.iter().map(|(l, _)| l.to_c64()).collect();
                        let eig: Vec<(Complex64, usize)> = spectrum
                            .into_iter()
                            .filter(|e| {
                                rational
                                    .iter()
                                    .all(|r| (r - e.eigenvalue).norm() > 1e-6 * r.norm().max(1.0))
                            })
                            .map(|e| (e.eigenvalue, e.algebraic_multiplicity))
                            .collect();
                        eigen_checks_on(&mf, &eig, &mut multiplicity, &mut float, &tol);
                    }
                    irrational = Some(float);
                }
            }
            out.push(multiplicity);
            if exact.cases > 0 {
                out.push(exact);
            }
            out.extend(irrational);
            out
        }
        AnyMatrix::Float(m) => {
            let mut out = identity_checks_on(m, FILE_FLOAT_TOL);
            if !m.is_square() {
                return out;
            }
            let mut theorem = CheckOutcome::new("eigenvector wedge identity", THEOREM_FLOAT_TOL);
            if let Some(entries) = theorem.outcome(float_spectrum(m, &opts), || "spectrum".into()) {
                let eig: Vec<(Complex64, usize)> = entries
                    .into_iter()
                    .map(|e| (e.eigenvalue, e.algebraic_multiplicity))
                    .collect();
                eigen_checks_on(m, &eig, &mut multiplicity, &mut theorem, &tol);
            }
            out.push(multiplicity);
            out.push(theorem);
            out
        }
    }
}

fn relative<T: Scalar>(diff: f64, scale: f64) -> f64 {
    if T::EXACT {
        diff
    } else {
        diff / scale.max(1.0)
    }
}

fn identity_checks_on<T: Scalar>(a: &Matrix<T>, rtol: f64) -> Vec<CheckOutcome> {
    let at = a.transpose();
    let mut multiplicative = CheckOutcome::new("compound multiplicativity", rtol);
    let aat = a * &at;
    for k in 0..=a.rows().min(a.cols()) {
        let show = || format!("k={k}");
        if let (Some(lhs), Some(ca), Some(cat)) = (
            multiplicative.outcome(compound(&aat, k), show),
            multiplicative.outcome(compound(a, k), show),
            multiplicative.outcome(compound(&at, k), show),
        ) {
            let scale = ca.max_abs() * cat.max_abs() * ca.cols() as f64;
            multiplicative.residual(
                relative::<T>(lhs.max_abs_diff(&(&*ca * &*cat)), scale),
                show,
            );
        }
    }
    if !a.is_square() {
        return vec![multiplicative];
    }

    let n = a.rows();
    let mut product = CheckOutcome::new("product law C_k adj_k = det I", rtol);
    let mut reversal = CheckOutcome::new("adjugate reversal", rtol);
    let mut delta = CheckOutcome::new("delta conjugation", rtol);
    let mut detsum = CheckOutcome::new("determinant of a sum", rtol);
    let mut charpoly = CheckOutcome::new("characteristic polynomial routes", rtol);
    let mut jacobi = CheckOutcome::new("derivative of the characteristic polynomial", rtol);

    let det = a.determinant().expect("square");
    let ata = &at * a;
    for k in 0..=n {
        let show = || format!("k={k}");
        let (Some(ck), Some(adj)) = (
            product.outcome(compound(a, k), show),
            product.outcome(higher_adjugate(a, k), show),
        ) else {
            continue;
        };
        let id = Matrix::identity(binomial(n, k)).scale(&det);
        let scale = ck.max_abs() * adj.max_abs() * ck.cols() as f64;
        let r = (&*ck * &*adj)
            .max_abs_diff(&id)
            .max((&*adj * &*ck).max_abs_diff(&id));
        product.residual(relative::<T>(r, scale), show);

        if let (Some(lhs), Some(adj_t)) = (
            reversal.outcome(higher_adjugate(&ata, k), show),
            reversal.outcome(higher_adjugate(&at, k), show),
        ) {
            let rhs = &*adj * &*adj_t;
            let scale = adj.max_abs() * adj_t.max_abs() * adj.cols() as f64;
            reversal.residual(relative::<T>(lhs.max_abs_diff(&rhs), scale), show);
        }
        if 1 <= k && k < n {
            if let Some(via) = delta.outcome(adjugate_via_delta(a, k), show) {
                delta.residual(relative::<T>(via.max_abs_diff(&adj), adj.max_abs()), show);
            }
        }
    }

    let show = || String::from("B = A^T");
    if let Some(s) = detsum.outcome(det_sum(a, &at), show) {
        let sum = a + &at;
        let direct = sum.determinant().expect("square");
        let scale = crate::spectral::adjugate_scale(&sum, 0);
        detsum.residual(relative::<T>((s - direct).magnitude(), scale), show);
    }

    let show = || String::from("adjugate traces against Faddeev-LeVerrier");
    if let (Some(p1), Some(p2)) = (
        charpoly.outcome(charpoly_via_adjugates(a), show),
        charpoly.outcome(charpoly_faddeev(a), show),
    ) {
        let diff = p1
            .coeffs()
            .iter()
            .zip(p2.coeffs())
            .map(|(x, y)| (x.clone() - y.clone()).magnitude())
            .fold(0.0, f64::max);
        let scale = p1
            .coeffs()
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max);
        charpoly.residual(relative::<T>(diff, scale), show);

        let probes = [
            T::zero(),
            T::one(),
            T::from_c64(Complex64::new(-0.5, 0.0)),
            T::from_c64(Complex64::new(2.0, 1.0)),
        ];
        for lambda in &probes {
            for j in 1..=n {
                let show = || format!("j={j} λ={}", lambda.to_text());
                if let (Some(t), Some(d)) = (
                    jacobi.outcome(jacobi_derivative(a, lambda, j), show),
                    jacobi.outcome(poly_derivative_eval(&p2, j, lambda), show),
                ) {
                    let scale = t.magnitude().max(d.magnitude());
                    jacobi.residual(relative::<T>((t - d).magnitude(), scale), show);
                }
            }
        }
    }
    vec![
        multiplicative,
        product,
        reversal,
        delta,
        detsum,
        charpoly,
        jacobi,
    ]
}

/// For every eigenvalue: the two multiplicity routes agree, and either the
/// identity holds (semisimple) or recovery is refused (defective).
fn eigen_checks_on<T: Scalar>(
    a: &Matrix<T>,
    eigenvalues: &[(T, usize)],
    multiplicity: &mut CheckOutcome,
    theorem: &mut CheckOutcome,
    tol: &TolerancePolicy,
) {
    for (lambda, algebraic) in eigenvalues {
        let show = || format!("λ={}", lambda.to_text());
        let Some(geo) = multiplicity.outcome(geometric_multiplicity(a, lambda, tol), show) else {
            continue;
        };
        let by_rank = geometric_multiplicity_by_rank(a, lambda, tol).ok();
        multiplicity.verdict(by_rank == Some(geo), show);
        if geo == *algebraic {
            if let Some(report) = theorem.outcome(verify_theorem(a, lambda, tol), show) {
                theorem.residual(report.worst(), show);
            }
        } else {
            let refused = matches!(
                recover_wedge(a, lambda, tol),
                Err(crate::error::Error::DefectiveEigenvalue { .. })
            );
            theorem.verdict(refused, || format!("{}: defective but not refused", show()));
        }
    }
}
