//! Scalar kernels: exact rational-complex and double-precision complex.
//!
//! Both kernels implement [`Scalar`]. Algorithms are written once against the
//! trait and branch on [`Scalar::EXACT`] only where a numerical choice differs
//! (pivoting strategy, zero tests).

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Complex number with arbitrary-precision rational parts.
pub type ExactComplex = Complex<BigRational>;

/// Field element shared by all matrix algorithms.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Exact arithmetic: no rounding, zero tests ignore tolerances.
    const EXACT: bool;
    /// Short tag used in file formats ("exact" / "float").
    const MODE: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    fn from_c64(value: Complex64) -> Self;

    /// Modulus as a double (approximate for the exact kernel).
    fn magnitude(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Text form used in reports and file output.
    fn to_text(&self) -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_usize(value: usize) -> Self {
        Self::from_i64(value as i64)
    }

    /// `self^exp` by repeated squaring.
    fn int_pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        result
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;
    const MODE: &'static str = "float";

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(value: i64) -> Self {
        Complex64::new(value as f64, 0.0)
    }
    fn from_c64(value: Complex64) -> Self {
        value
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn to_text(&self) -> String {
        format_float(self)
    }
}

impl Scalar for ExactComplex {
    const EXACT: bool = true;
    const MODE: &'static str = "exact";

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn from_i64(value: i64) -> Self {
        Complex::new(
            BigRational::from_integer(BigInt::from(value)),
            BigRational::zero(),
        )
    }
    /// Exact binary expansion of both parts; panics on non-finite input.
    fn from_c64(value: Complex64) -> Self {
        let re = BigRational::from_float(value.re).expect("finite real part");
        let im = BigRational::from_float(value.im).expect("finite imaginary part");
        Complex::new(re, im)
    }
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn to_text(&self) -> String {
        format_exact(self)
    }
}

/// Rational-complex from integer numerators and denominators.
pub fn exact(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> ExactComplex {
    Complex::new(
        BigRational::new(re_num.into(), re_den.into()),
        BigRational::new(im_num.into(), im_den.into()),
    )
}

/// Real rational `num / den`.
pub fn ratio(num: i64, den: i64) -> ExactComplex {
    exact(num, den, 0, 1)
}

/// Zero decisions for the floating kernel.
///
/// A value `z` counts as zero when `|z| <= absolute_floor + relative_eps * scale`,
/// where `scale` is the largest entry magnitude of the object under test. The
/// exact kernel ignores the policy and tests for identical zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy {
    pub relative_eps: f64,
    pub absolute_floor: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            relative_eps: 1e-10,
            absolute_floor: 1e-300,
        }
    }
}

impl TolerancePolicy {
    pub fn new(relative_eps: f64, absolute_floor: f64) -> Self {
        assert!(relative_eps >= 0.0 && absolute_floor >= 0.0);
        TolerancePolicy {
            relative_eps,
            absolute_floor,
        }
    }

    pub fn threshold(&self, scale: f64) -> f64 {
        self.absolute_floor + self.relative_eps * scale
    }

    pub fn is_zero<T: Scalar>(&self, value: &T, scale: f64) -> bool {
        if T::EXACT {
            value.is_zero()
        } else {
            value.magnitude() <= self.threshold(scale)
        }
    }

    /// Same decision for an already-computed residual magnitude.
    pub fn negligible<T: Scalar>(&self, residual: f64, scale: f64) -> bool {
        if T::EXACT {
            residual == 0.0
        } else {
            residual <= self.threshold(scale)
        }
    }
}

/// Displays a scalar in the crate's text syntax: `p/q`, `p/q+r/si`, or `a+bi`.
pub struct ScalarDisplay<'a, T>(pub &'a T);

impl Display for ScalarDisplay<'_, ExactComplex> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_exact(self.0))
    }
}

impl Display for ScalarDisplay<'_, Complex64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_float(self.0))
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_exact(z: &ExactComplex) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!(
        "{}{}{}i",
        format_rational(&z.re),
        sign,
        format_rational(&z.im.abs())
    )
}

pub fn format_float(z: &Complex64) -> String {
    if z.im == 0.0 {
        return format!("{:?}", z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:?}{}{:?}i", z.re, sign, z.im.abs())
}
