//! Truncated univariate power series with exact coefficients.
//!
//! A series carries its truncation order `N` and stores coefficients of
//! degrees `0..=N`. Binary operations require equal orders; mixing orders is
//! a bug in the caller, so the operator impls panic while `try_*` variants
//! report `TruncationMismatch`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::coeff::Coefficient;
use crate::error::{CoreError, Result};

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries1 {
    order: usize,
    coeffs: Vec<Coefficient>,
}

impl TruncatedSeries1 {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries1 {
            order,
            coeffs: vec![Coefficient::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, c: Coefficient) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Coefficient::one())
    }

    /// c * x^k, silently zero if k exceeds the order.
    pub fn monomial(order: usize, k: usize, c: Coefficient) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn identity(order: usize) -> Self {
        Self::monomial(order, 1, Coefficient::one())
    }

    pub fn from_coeffs(order: usize, cs: &[Coefficient]) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in cs.iter().enumerate().take(order + 1) {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &Coefficient {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: Coefficient) {
        self.coeffs[k] = c;
    }

    pub fn constant_term(&self) -> &Coefficient {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Degree of the lowest nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate_to(&self, order: usize) -> Self {
        let mut s = Self::zero(order);
        for k in 0..=order.min(self.order) {
            s.coeffs[k] = self.coeffs[k].clone();
        }
        s
    }

    pub fn scalar_mul(&self, c: &Coefficient) -> Self {
        let mut out = self.clone();
        for v in &mut out.coeffs {
            *v = &*v * c;
        }
        out
    }

    fn check_order(&self, rhs: &Self) {
        assert_eq!(
            self.order, rhs.order,
            "truncation order mismatch: {} vs {}",
            self.order, rhs.order
        );
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(CoreError::TruncationMismatch(self.order, rhs.order));
        }
        Ok(self + rhs)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(CoreError::TruncationMismatch(self.order, rhs.order));
        }
        Ok(self * rhs)
    }

    /// Multiplicative inverse of a unit series.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(CoreError::DivisionByNonUnit);
        }
        let c0 = self.coeffs[0].inv()?;
        // Solve v * self = 1 degree by degree.
        let mut v = Self::zero(self.order);
        v.coeffs[0] = c0.clone();
        for k in 1..=self.order {
            let mut acc = Coefficient::zero();
            for j in 0..k {
                acc += &(&v.coeffs[j] * &self.coeffs[k - j]);
            }
            v.coeffs[k] = -&acc * &c0;
        }
        Ok(v)
    }

    pub fn divide(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(CoreError::TruncationMismatch(self.order, rhs.order));
        }
        Ok(self * &rhs.inverse()?)
    }

    /// Substitution self(g) for g with g(0) = 0.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if self.order != g.order {
            return Err(CoreError::TruncationMismatch(self.order, g.order));
        }
        if !g.constant_term().is_zero() {
            return Err(CoreError::NonVanishingShift);
        }
        // Horner from the top coefficient down.
        let mut acc = Self::constant(self.order, self.coeffs[self.order].clone());
        for k in (0..self.order).rev() {
            acc = &(&acc * g) + &Self::constant(self.order, self.coeffs[k].clone());
        }
        Ok(acc)
    }

    /// Compositional inverse of phi with phi(0) = 0, phi'(0) != 0.
    pub fn compose_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(CoreError::NonVanishingShift);
        }
        if self.coeffs.len() < 2 || self.coeffs[1].is_zero() {
            return Err(CoreError::ZeroLinearCoefficient);
        }
        let n = self.order;
        let c1_inv = self.coeffs[1].inv()?;
        // psi built degree by degree so that self(psi) = x.
        let mut psi = Self::monomial(n, 1, c1_inv.clone());
        for d in 2..=n {
            let trial = self.compose(&psi)?;
            // self(psi) = x + e_d x^d + ...; correct psi at degree d.
            let err = trial.coeffs[d].clone();
            if !err.is_zero() {
                psi.coeffs[d] = &psi.coeffs[d] - &(&err * &c1_inv);
            }
        }
        Ok(psi)
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.order);
        for k in 1..=self.order {
            out.coeffs[k - 1] = &self.coeffs[k] * &Coefficient::from_int(k as i64);
        }
        out
    }

    /// Primitive vanishing at 0, same truncation order (the top coefficient
    /// of the input integrates past the order and is dropped).
    pub fn integral(&self) -> Self {
        let mut out = Self::zero(self.order);
        for k in 0..self.order {
            out.coeffs[k + 1] = self.coeffs[k]
                .checked_div(&Coefficient::from_int((k + 1) as i64))
                .expect("nonzero integer");
        }
        out
    }

    /// exp of a series with zero constant term, exact mod truncation.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(CoreError::ConstraintViolated(
                "exp requires zero constant term".into(),
            ));
        }
        let mut acc = Self::one(self.order);
        let mut term = Self::one(self.order);
        let mut fact = BigRational::one();
        for m in 1..=self.order {
            term = &term * self;
            fact *= BigRational::from_integer(BigInt::from(m));
            let inv_fact = Coefficient::from_rational(fact.recip());
            acc = &acc + &term.scalar_mul(&inv_fact);
        }
        Ok(acc)
    }

    /// log of a unit series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(CoreError::ConstraintViolated(
                "log requires constant term 1".into(),
            ));
        }
        let h = self - &Self::one(self.order);
        let mut acc = Self::zero(self.order);
        let mut pow = Self::one(self.order);
        for m in 1..=self.order {
            pow = &pow * &h;
            let sign = if m % 2 == 1 { 1 } else { -1 };
            acc = &acc + &pow.scalar_mul(&Coefficient::from_ratio(sign, m as i64));
        }
        Ok(acc)
    }

    /// (1 + h)^a for a series with constant term 1 and arbitrary exact
    /// exponent, via the binomial series. Exact mod truncation.
    pub fn pow_exact(&self, a: &Coefficient) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(CoreError::ConstraintViolated(
                "pow_exact requires constant term 1".into(),
            ));
        }
        let h = self - &Self::one(self.order);
        let mut acc = Self::one(self.order);
        let mut pow = Self::one(self.order);
        let mut binom = Coefficient::one();
        for m in 1..=self.order {
            pow = &pow * &h;
            // binom(a, m) = binom(a, m-1) * (a - m + 1) / m
            let step = a - &Coefficient::from_int((m - 1) as i64);
            binom = &(&binom * &step)
                / &Coefficient::from_int(m as i64);
            acc = &acc + &pow.scalar_mul(&binom);
        }
        Ok(acc)
    }

    /// Exact evaluation at a scalar point. Only meaningful for polynomial
    /// data; on a truncation it evaluates the truncated polynomial.
    pub fn eval(&self, x: &Coefficient) -> Coefficient {
        let mut acc = Coefficient::zero();
        for k in (0..=self.order).rev() {
            acc = &(&acc * x) + &self.coeffs[k];
        }
        acc
    }

    /// Divide by x^m; degrees above `order - m` are unknown after the shift
    /// and left zero. Fails if any coefficient below x^m is nonzero.
    pub fn div_x_pow(&self, m: usize) -> Option<Self> {
        if self.coeffs.iter().take(m.min(self.order + 1)).any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Self::zero(self.order);
        for k in m..=self.order {
            out.coeffs[k - m] = self.coeffs[k].clone();
        }
        Some(out)
    }

    pub fn mul_x_pow(&self, m: usize) -> Self {
        let mut out = Self::zero(self.order);
        for k in 0..=self.order {
            if k + m <= self.order {
                out.coeffs[k + m] = self.coeffs[k].clone();
            }
        }
        out
    }
}

impl Add for &TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn add(self, rhs: &TruncatedSeries1) -> TruncatedSeries1 {
        self.check_order(rhs);
        let mut out = self.clone();
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out.coeffs[k] += c;
        }
        out
    }
}

impl Sub for &TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn sub(self, rhs: &TruncatedSeries1) -> TruncatedSeries1 {
        self.check_order(rhs);
        let mut out = self.clone();
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out.coeffs[k] -= c;
        }
        out
    }
}

impl Mul for &TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn mul(self, rhs: &TruncatedSeries1) -> TruncatedSeries1 {
        self.check_order(rhs);
        let mut out = TruncatedSeries1::zero(self.order);
        for i in 0..=self.order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=self.order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &rhs.coeffs[j];
                out.coeffs[i + j] += &prod;
            }
        }
        out
    }
}

impl Neg for &TruncatedSeries1 {
    type Output = TruncatedSeries1;
    fn neg(self) -> TruncatedSeries1 {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = -&*c;
        }
        out
    }
}

impl fmt::Display for TruncatedSeries1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

impl fmt::Debug for TruncatedSeries1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    #[test]
    fn geometric_series_inverse() {
        // 1 / (1 - y) = 1 + y + ... + y^N
        let n = 8;
        let one_minus = TruncatedSeries1::from_coeffs(n, &[c(1), c(-1)]);
        let inv = one_minus.inverse().unwrap();
        for k in 0..=n {
            assert_eq!(inv.coeff(k), &c(1));
        }
        assert_eq!(&inv * &one_minus, TruncatedSeries1::one(n));
    }

    #[test]
    fn divide_rejects_non_unit() {
        let n = 4;
        let y = TruncatedSeries1::identity(n);
        assert_eq!(y.divide(&y), Err(CoreError::DivisionByNonUnit));
    }

    #[test]
    fn integral_of_inverse_unit() {
        // integrate 1/(1+x) = x - x^2/2 + x^3/3 - ...
        let n = 6;
        let f = TruncatedSeries1::from_coeffs(n, &[c(1), c(1)]).inverse().unwrap();
        let int = f.integral();
        assert_eq!(int.coeff(0), &c(0));
        for k in 1..=n {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(int.coeff(k), &Coefficient::from_ratio(sign, k as i64));
        }
    }

    #[test]
    fn compose_inverse_round_trip() {
        let n = 10;
        let mut phi = TruncatedSeries1::identity(n);
        phi.set_coeff(2, c(3));
        phi.set_coeff(3, Coefficient::from_ratio(-1, 2));
        let psi = phi.compose_inverse().unwrap();
        assert_eq!(phi.compose(&psi).unwrap(), TruncatedSeries1::identity(n));
        assert_eq!(psi.compose(&phi).unwrap(), TruncatedSeries1::identity(n));
    }

    #[test]
    fn exp_log_round_trip() {
        let n = 9;
        let mut h = TruncatedSeries1::zero(n);
        h.set_coeff(1, Coefficient::from_ratio(2, 3));
        h.set_coeff(4, c(-5));
        let e = h.exp().unwrap();
        assert_eq!(e.log().unwrap(), h);
    }

    #[test]
    fn pow_exact_matches_repeated_mul() {
        let n = 7;
        let u = TruncatedSeries1::from_coeffs(n, &[c(1), c(2), c(0), c(-1)]);
        let sq = u.pow_exact(&c(3)).unwrap();
        assert_eq!(sq, &(&u * &u) * &u);
        // Fractional exponent inverts integer powers.
        let back = sq.pow_exact(&Coefficient::from_ratio(1, 3)).unwrap();
        assert_eq!(back, u);
    }
}
