//! Exact scalars: Gaussian rationals `re + im*i` with arbitrary-precision
//! rational parts.
//!
//! Every formal operation in the crate runs over these; floating point only
//! appears past the explicit conversion boundary in `numerics`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{CoreError, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Coefficient {
    re: BigRational,
    im: BigRational,
}

impl Coefficient {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Coefficient { re, im }
    }

    pub fn zero() -> Self {
        Coefficient::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Coefficient::from_int(1)
    }

    pub fn i() -> Self {
        Coefficient::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Coefficient::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn gaussian(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        assert!(re_den != 0 && im_den != 0, "zero denominator");
        Coefficient::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        Coefficient::new(r, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Real part as a rational, provided the imaginary part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.im.is_zero() {
            Some(&self.re)
        } else {
            None
        }
    }

    /// The value as a non-negative machine integer, if it is one.
    pub fn as_usize(&self) -> Option<usize> {
        let r = self.as_rational()?;
        if r.is_integer() && !r.is_negative() {
            r.to_integer().to_usize()
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        Coefficient::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2 = re^2 + im^2, exactly.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CoreError::DivisionByNonUnit);
        }
        let n = self.norm_sqr();
        Ok(Coefficient::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow_u(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Coefficient::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact square root in Q(i), when one exists.
    ///
    /// For z = x + iy with y != 0 we need |z| rational and (x + |z|)/2 a
    /// rational square; both conditions are decidable exactly.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.im.is_zero() {
            return if self.re.is_negative() {
                rat_sqrt_exact(&-self.re.clone())
                    .map(|s| Coefficient::new(BigRational::zero(), s))
            } else {
                rat_sqrt_exact(&self.re).map(Coefficient::from_rational)
            };
        }
        let m = rat_sqrt_exact(&self.norm_sqr())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let a = rat_sqrt_exact(&((&self.re + &m) / &two))?;
        if a.is_zero() {
            return None;
        }
        let b = &self.im / &(&a * &two);
        let cand = Coefficient::new(a, b);
        if &(&cand * &cand) == self {
            Some(cand)
        } else {
            None
        }
    }

    /// Exact n-th root in Q(i), best effort: handles n = 1, square roots, and
    /// purely rational radicands for any n. Returns a principal-ish choice.
    pub fn nth_root_exact(&self, n: u32) -> Option<Self> {
        match n {
            0 => None,
            1 => Some(self.clone()),
            2 => self.sqrt_exact(),
            _ => {
                let r = self.as_rational()?;
                if r.is_negative() {
                    if n % 2 == 1 {
                        rat_nth_root_exact(&-r.clone(), n).map(|s| Coefficient::from_rational(-s))
                    } else {
                        None
                    }
                } else {
                    rat_nth_root_exact(r, n).map(Coefficient::from_rational)
                }
            }
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rat_sqrt_exact(r: &BigRational) -> Option<BigRational> {
    rat_nth_root_exact(r, 2)
}

/// Exact n-th root of a non-negative rational, if one exists.
pub fn rat_nth_root_exact(r: &BigRational, n: u32) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if &rn.pow(n) == num && &rd.pow(n) == den {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&Coefficient> for &Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: &Coefficient) -> Coefficient {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait for Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: Coefficient) -> Coefficient {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: &Coefficient) -> Coefficient {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| Coefficient::new(&a.re + &b.re, &a.im + &b.im));
binop!(Sub, sub, |a, b| Coefficient::new(&a.re - &b.re, &a.im - &b.im));
binop!(Mul, mul, |a, b| Coefficient::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));

// Division panics on zero; use checked_div where the divisor is user input.
binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero coefficient"));

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

/// A scalar that is either exact, an exact real quadratic surd, or a float.
///
/// Classification keeps exactness as long as the arithmetic allows and tags
/// everything else as approximate.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Coefficient),
    /// (a + b*sqrt(d)) with a, b rational, d a positive non-square integer.
    Surd {
        a: BigRational,
        b: BigRational,
        d: BigInt,
    },
    Approx(Complex64),
}

impl Scalar {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Approx(_))
    }

    pub fn to_complex64(&self) -> Complex64 {
        match self {
            Scalar::Exact(c) => c.to_complex64(),
            Scalar::Surd { a, b, d } => {
                let root = d.to_f64().unwrap_or(f64::NAN).sqrt();
                Complex64::new(
                    a.to_f64().unwrap_or(f64::NAN) + b.to_f64().unwrap_or(f64::NAN) * root,
                    0.0,
                )
            }
            Scalar::Approx(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Option<&Coefficient> {
        match self {
            Scalar::Exact(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(c) => write!(f, "{c}"),
            Scalar::Surd { a, b, d } => write!(f, "{a}+{b}*sqrt({d})"),
            Scalar::Approx(z) => write!(f, "{z}"),
        }
    }
}
