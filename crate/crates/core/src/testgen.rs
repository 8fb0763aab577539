//! Seeded random matrices with planted structure.
//!
//! Shared by the `verify` subcommand and the test suites so both exercise
//! the same families.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::scalar::{ratio, ExactComplex, Scalar, TolerancePolicy};

type Q = ExactComplex;

/// A = S · D · S⁻¹ with a known eigenvalue of known multiplicity.
#[derive(Clone, Debug)]
pub struct PlantedEigen {
    pub matrix: Matrix<Q>,
    pub eigenvalue: Q,
    /// Geometric multiplicity of `eigenvalue`.
    pub geometric: usize,
    /// Algebraic multiplicity of `eigenvalue`.
    pub algebraic: usize,
}

/// Hermitian matrix with its planted spectrum (ascending).
#[derive(Clone, Debug)]
pub struct PlantedHermitian {
    pub matrix: Matrix<Complex64>,
    pub eigenvalues: Vec<f64>,
}

pub struct MatrixGen {
    rng: ChaCha8Rng,
}

impl MatrixGen {
    pub fn new(seed: u64) -> Self {
        MatrixGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    /// Rational `p/q` with `|p| <= num_bound` and `1 <= q <= den_bound`.
    pub fn rational(&mut self, num_bound: i64, den_bound: i64) -> Q {
        let p = self.int(-num_bound, num_bound);
        let q = self.int(1, den_bound);
        ratio(p, q)
    }

    /// Entries drawn uniformly from `[-bound, bound]`.
    pub fn integer_matrix(&mut self, rows: usize, cols: usize, bound: i64) -> Matrix<Q> {
        Matrix::from_fn(rows, cols, |_, _| Q::from_i64(self.int(-bound, bound)))
    }

    /// Integer matrix of determinant ±1 with its (integer) inverse.
    ///
    /// Built from a random permutation and `n + 2` shears `row_i += ±row_j`,
    /// which keeps entries small.
    pub fn unimodular(&mut self, n: usize) -> (Matrix<Q>, Matrix<Q>) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        let mut s = Matrix::from_fn(n, n, |i, j| {
            if perm[i] == j {
                Q::from_i64(1)
            } else {
                Q::from_i64(0)
            }
        });
        if n > 1 {
            for _ in 0..n + 2 {
                let i = self.index(n);
                let mut j = self.index(n - 1);
                if j >= i {
                    j += 1;
                }
                let c = if self.rng.gen_bool(0.5) { 1 } else { -1 };
                for col in 0..n {
                    let add = s[(j, col)].clone() * Q::from_i64(c);
                    s[(i, col)] = s[(i, col)].clone() + add;
                }
            }
        }
        let inv = s
            .inverse(&TolerancePolicy::default())
            .expect("unimodular matrices are invertible");
        (s, inv)
    }

    /// `P · diag(1, .., 1, 0, .., 0) · Q` with `rank` ones.
    pub fn planted_rank(&mut self, n: usize, rank: usize) -> Matrix<Q> {
        assert!(rank <= n);
        let (p, _) = self.unimodular(n);
        let (q, _) = self.unimodular(n);
        let d = Matrix::from_fn(n, n, |i, j| {
            Q::from_i64(if i == j && i < rank { 1 } else { 0 })
        });
        &(&p * &d) * &q
    }

    /// Eigenvalue `λ` of geometric and algebraic multiplicity `k`.
    ///
    /// `D = [[λ I_k, X], [0, T]]` with `T` upper triangular, diagonal distinct
    /// from `λ`, so `λ` is semisimple even though `D` is not normal.
    pub fn planted_eigen(&mut self, n: usize, k: usize) -> PlantedEigen {
        assert!(1 <= k && k <= n);
        let lambda = self.int(-3, 3);
        let others = self.distinct_avoiding(n - k, lambda);
        let d = Matrix::from_fn(n, n, |i, j| {
            let v = if i == j {
                if i < k {
                    lambda
                } else {
                    others[i - k]
                }
            } else if j > i && j >= k {
                self.int(-2, 2)
            } else {
                0
            };
            Q::from_i64(v)
        });
        let (s, s_inv) = self.unimodular(n);
        PlantedEigen {
            matrix: &(&s * &d) * &s_inv,
            eigenvalue: Q::from_i64(lambda),
            geometric: k,
            algebraic: k,
        }
    }

    /// Jordan block `J_m(λ)` plus `extra` further copies of `λ` on the
    /// diagonal, the rest filled with other eigenvalues, conjugated by a
    /// unimodular `S`. Geometric multiplicity `1 + extra`, algebraic `m + extra`.
    pub fn jordan_embedded(&mut self, n: usize, m: usize, extra: usize) -> PlantedEigen {
        assert!(m >= 2 && m + extra <= n);
        let lambda = self.int(-3, 3);
        let others = self.distinct_avoiding(n - m - extra, lambda);
        let d = Matrix::from_fn(n, n, |i, j| {
            let v = if i == j {
                if i < m + extra {
                    lambda
                } else {
                    others[i - m - extra]
                }
            } else if j == i + 1 && j < m {
                1
            } else if j > i && j >= m + extra {
                self.int(-2, 2)
            } else {
                0
            };
            Q::from_i64(v)
        });
        let (s, s_inv) = self.unimodular(n);
        PlantedEigen {
            matrix: &(&s * &d) * &s_inv,
            eigenvalue: Q::from_i64(lambda),
            geometric: 1 + extra,
            algebraic: m + extra,
        }
    }

    fn distinct_avoiding(&mut self, count: usize, avoid: i64) -> Vec<i64> {
        let mut pool: Vec<i64> = (-6..=6).filter(|&x| x != avoid).collect();
        pool.shuffle(&mut self.rng);
        pool.truncate(count);
        pool
    }

    /// `U · diag(λ) · Uᴴ` with `U` a product of random Householder
    /// reflections and eigenvalues in `[-5, 5]` pairwise at least `min_gap`
    /// apart. `complex = false` keeps everything real.
    pub fn hermitian(&mut self, n: usize, complex: bool, min_gap: f64) -> PlantedHermitian {
        assert!(n >= 1 && (n as f64 - 1.0) * min_gap < 10.0);
        let eigenvalues = loop {
            let mut l: Vec<f64> = (0..n).map(|_| self.rng.gen_range(-5.0..5.0)).collect();
            l.sort_by(f64::total_cmp);
            if l.windows(2).all(|p| p[1] - p[0] >= min_gap) {
                break l;
            }
        };
        self.hermitian_with_spectrum(eigenvalues, complex)
    }

    /// `U · diag(eigenvalues) · Uᴴ` for a given ascending spectrum.
    pub fn hermitian_with_spectrum(
        &mut self,
        eigenvalues: Vec<f64>,
        complex: bool,
    ) -> PlantedHermitian {
        let n = eigenvalues.len();
        let mut u = Matrix::<Complex64>::identity(n);
        for _ in 0..3 {
            let h = self.householder(n, complex);
            u = &u * &h;
        }
        let d = Matrix::diagonal(
            &eigenvalues
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>(),
        );
        let mut a = &(&u * &d) * &u.conj_transpose();
        // exact symmetry, so the Hermitian test sees no rounding asymmetry
        for i in 0..n {
            a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
            for j in i + 1..n {
                a[(j, i)] = a[(i, j)].conj();
            }
        }
        PlantedHermitian {
            matrix: a,
            eigenvalues,
        }
    }

    /// `I - 2 x xᴴ / (xᴴ x)` for a random `x`.
    fn householder(&mut self, n: usize, complex: bool) -> Matrix<Complex64> {
        let x: Vec<Complex64> = (0..n)
            .map(|_| {
                let re = self.rng.gen_range(-1.0..1.0);
                let im = if complex {
                    self.rng.gen_range(-1.0..1.0)
                } else {
                    0.0
                };
                Complex64::new(re, im)
            })
            .collect();
        let norm2: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        Matrix::from_fn(n, n, |i, j| {
            let id = if i == j { 1.0 } else { 0.0 };
            Complex64::new(id, 0.0) - x[i] * x[j].conj() * (2.0 / norm2)
        })
    }
}
