//! Truncated bivariate power series, dense triangular storage.
//!
//! Coefficients are indexed by (i, j) with i + j <= N, laid out by total
//! degree. All ring operations are exact modulo total degree N.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::Coefficient;
use crate::error::{CoreError, Result};
use crate::series::one::TruncatedSeries1;

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries2 {
    order: usize,
    // coefficient of x^(d-j) y^j at offset d(d+1)/2 + j
    coeffs: Vec<Coefficient>,
}

#[inline]
fn tri(n: usize) -> usize {
    n * (n + 1) / 2
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    tri(i + j) + j
}

impl TruncatedSeries2 {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries2 {
            order,
            coeffs: vec![Coefficient::zero(); tri(order + 2)],
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

    /// c * x^i y^j; silently zero when i + j exceeds the order.
    pub fn monomial(order: usize, i: usize, j: usize, c: Coefficient) -> Self {
        let mut s = Self::zero(order);
        if i + j <= order {
            s.coeffs[idx(i, j)] = c;
        }
        s
    }

    pub fn var_x(order: usize) -> Self {
        Self::monomial(order, 1, 0, Coefficient::one())
    }

    pub fn var_y(order: usize) -> Self {
        Self::monomial(order, 0, 1, Coefficient::one())
    }

    /// Lift a univariate series into the given variable (0 = x, 1 = y).
    pub fn from_series1(f: &TruncatedSeries1, var: Var, order: usize) -> Self {
        let mut s = Self::zero(order);
        for k in 0..=f.order().min(order) {
            let c = f.coeff(k).clone();
            if c.is_zero() {
                continue;
            }
            match var {
                Var::X => s.coeffs[idx(k, 0)] = c,
                Var::Y => s.coeffs[idx(0, k)] = c,
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn at(&self, i: usize, j: usize) -> &Coefficient {
        debug_assert!(i + j <= self.order);
        &self.coeffs[idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Coefficient) {
        assert!(i + j <= self.order, "index beyond truncation");
        self.coeffs[idx(i, j)] = c;
    }

    pub fn add_to(&mut self, i: usize, j: usize, c: &Coefficient) {
        assert!(i + j <= self.order, "index beyond truncation");
        self.coeffs[idx(i, j)] += c;
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

    /// Total-degree order of vanishing; `None` when identically zero.
    pub fn valuation(&self) -> Option<usize> {
        for d in 0..=self.order {
            for j in 0..=d {
                if !self.coeffs[tri(d) + j].is_zero() {
                    return Some(d);
                }
            }
        }
        None
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, usize, &Coefficient)> + '_ {
        (0..=self.order).flat_map(move |d| {
            (0..=d).filter_map(move |j| {
                let c = &self.coeffs[tri(d) + j];
                if c.is_zero() {
                    None
                } else {
                    Some((d - j, j, c))
                }
            })
        })
    }

    pub fn truncate_to(&self, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, j, c) in self.iter_nonzero() {
            if i + j <= order {
                s.coeffs[idx(i, j)] = c.clone();
            }
        }
        s
    }

    pub fn scalar_mul(&self, c: &Coefficient) -> Self {
        let mut out = self.clone();
        for v in &mut out.coeffs {
            if !v.is_zero() {
                *v = &*v * c;
            }
        }
        out
    }

    /// Homogeneous part of total degree d, as a fresh series.
    pub fn degree_part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.order);
        if d <= self.order {
            for j in 0..=d {
                out.coeffs[tri(d) + j] = self.coeffs[tri(d) + j].clone();
            }
        }
        out
    }

    pub fn max_x_degree(&self) -> usize {
        self.iter_nonzero().map(|(i, _, _)| i).max().unwrap_or(0)
    }

    /// Restriction to y = 0 as a univariate series in x.
    pub fn restrict_y0(&self) -> TruncatedSeries1 {
        let mut out = TruncatedSeries1::zero(self.order);
        for i in 0..=self.order {
            out.set_coeff(i, self.coeffs[idx(i, 0)].clone());
        }
        out
    }

    /// Restriction to x = 0 as a univariate series in y.
    pub fn restrict_x0(&self) -> TruncatedSeries1 {
        let mut out = TruncatedSeries1::zero(self.order);
        for j in 0..=self.order {
            out.set_coeff(j, self.coeffs[idx(0, j)].clone());
        }
        out
    }

    /// The series in x multiplying y^j (degrees up to N - j; the rest is
    /// unknown at this truncation and left zero).
    pub fn coeff_of_y_pow(&self, j: usize) -> TruncatedSeries1 {
        let mut out = TruncatedSeries1::zero(self.order);
        if j <= self.order {
            for i in 0..=self.order - j {
                out.set_coeff(i, self.coeffs[idx(i, j)].clone());
            }
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

    /// Multiplicative inverse of a unit, by degreewise solve.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(CoreError::DivisionByNonUnit);
        }
        let c0 = self.coeffs[0].inv()?;
        let n = self.order;
        let mut v = Self::zero(n);
        v.coeffs[0] = c0.clone();
        // [v * self]_d = 0 for d >= 1 determines the degree-d slice of v.
        for d in 1..=n {
            for j in 0..=d {
                let i = d - j;
                let mut acc = Coefficient::zero();
                for (a, b, cs) in self.iter_nonzero() {
                    if a + b == 0 || a > i || b > j {
                        continue;
                    }
                    let cv = &v.coeffs[idx(i - a, j - b)];
                    if !cv.is_zero() {
                        acc += &(cs * cv);
                    }
                }
                v.coeffs[idx(i, j)] = -&acc * &c0;
            }
        }
        Ok(v)
    }

    pub fn divide(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(CoreError::TruncationMismatch(self.order, rhs.order));
        }
        Ok(self * &rhs.inverse()?)
    }

    /// f(u, v) with u(0,0) = v(0,0) = 0, via a composer that can be reused
    /// for several series over the same substitution.
    pub fn compose(&self, u: &Self, v: &Self) -> Result<Self> {
        Composer::new(u, v)?.apply(self)
    }

    pub fn derivative(&self, var: Var) -> Self {
        let mut out = Self::zero(self.order);
        for (i, j, c) in self.iter_nonzero() {
            match var {
                Var::X => {
                    if i >= 1 {
                        out.coeffs[idx(i - 1, j)] = c * &Coefficient::from_int(i as i64);
                    }
                }
                Var::Y => {
                    if j >= 1 {
                        out.coeffs[idx(i, j - 1)] = c * &Coefficient::from_int(j as i64);
                    }
                }
            }
        }
        out
    }

    /// Divide by x^m. Degrees above `order - m` are unknown after the shift
    /// and left zero. `None` when some term is not divisible.
    pub fn div_x_pow(&self, m: usize) -> Option<Self> {
        let mut out = Self::zero(self.order);
        for (i, j, c) in self.iter_nonzero() {
            if i < m {
                return None;
            }
            out.coeffs[idx(i - m, j)] = c.clone();
        }
        Some(out)
    }

    pub fn div_y_pow(&self, m: usize) -> Option<Self> {
        let mut out = Self::zero(self.order);
        for (i, j, c) in self.iter_nonzero() {
            if j < m {
                return None;
            }
            out.coeffs[idx(i, j - m)] = c.clone();
        }
        Some(out)
    }

    pub fn mul_var(&self, var: Var, m: usize) -> Self {
        let mut out = Self::zero(self.order);
        for (i, j, c) in self.iter_nonzero() {
            let (ni, nj) = match var {
                Var::X => (i + m, j),
                Var::Y => (i, j + m),
            };
            if ni + nj <= self.order {
                out.coeffs[idx(ni, nj)] = c.clone();
            }
        }
        out
    }

    /// Swap the roles of x and y.
    pub fn swap_vars(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (i, j, c) in self.iter_nonzero() {
            out.coeffs[idx(j, i)] = c.clone();
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    X,
    Y,
}

/// Substitution engine: precomputes powers of v so that several series can
/// be composed with the same (u, v) at the cost of one Horner pass each.
pub struct Composer {
    u: TruncatedSeries2,
    v_pows: Vec<TruncatedSeries2>,
    order: usize,
}

impl Composer {
    pub fn new(u: &TruncatedSeries2, v: &TruncatedSeries2) -> Result<Self> {
        if u.order() != v.order() {
            return Err(CoreError::TruncationMismatch(u.order(), v.order()));
        }
        if !u.constant_term().is_zero() || !v.constant_term().is_zero() {
            return Err(CoreError::NonVanishingShift);
        }
        let n = u.order();
        let mut v_pows = Vec::with_capacity(n + 1);
        v_pows.push(TruncatedSeries2::one(n));
        for _ in 1..=n {
            let next = v_pows.last().unwrap() * v;
            v_pows.push(next);
        }
        Ok(Composer {
            u: u.clone(),
            v_pows,
            order: n,
        })
    }

    pub fn apply(&self, f: &TruncatedSeries2) -> Result<TruncatedSeries2> {
        if f.order() != self.order {
            return Err(CoreError::TruncationMismatch(f.order(), self.order));
        }
        let n = self.order;
        // A_i(v) = sum_j f_{i,j} v^j, then Horner in u.
        let mut acc = TruncatedSeries2::zero(n);
        for i in (0..=n).rev() {
            acc = &acc * &self.u;
            for j in 0..=n - i {
                let c = f.at(i, j);
                if !c.is_zero() {
                    acc = &acc + &self.v_pows[j].scalar_mul(c);
                }
            }
        }
        Ok(acc)
    }
}

/// Compositional inverse of the pair (u, v) as a map of (C^2, 0): returns
/// (p, q) with (p, q) o (u, v) = (x, y) = (u, v) o (p, q) mod truncation.
pub fn invert_series_pair(
    u: &TruncatedSeries2,
    v: &TruncatedSeries2,
) -> Result<(TruncatedSeries2, TruncatedSeries2)> {
    if u.order() != v.order() {
        return Err(CoreError::TruncationMismatch(u.order(), v.order()));
    }
    if !u.constant_term().is_zero() || !v.constant_term().is_zero() {
        return Err(CoreError::NonVanishingShift);
    }
    let n = u.order();
    let a = u.at(1, 0).clone();
    let b = u.at(0, 1).clone();
    let c = v.at(1, 0).clone();
    let d = v.at(0, 1).clone();
    let det = &(&a * &d) - &(&b * &c);
    if det.is_zero() {
        return Err(CoreError::SingularLinearPart);
    }
    let det_inv = det.inv()?;
    // L^{-1} entries
    let ia = &d * &det_inv;
    let ib = -&b * &det_inv;
    let ic = -&c * &det_inv;
    let id = &a * &det_inv;

    // T = L^{-1} o (u, v) is tangent to the identity; write T = id + h.
    let t1 = &u.scalar_mul(&ia) + &v.scalar_mul(&ib);
    let t2 = &u.scalar_mul(&ic) + &v.scalar_mul(&id);
    let h1 = &t1 - &TruncatedSeries2::var_x(n);
    let h2 = &t2 - &TruncatedSeries2::var_y(n);

    // Fixed point psi = id - h o psi gains one degree per pass.
    let mut p1 = TruncatedSeries2::var_x(n);
    let mut p2 = TruncatedSeries2::var_y(n);
    for _ in 0..n {
        let comp = Composer::new(&p1, &p2)?;
        let n1 = &TruncatedSeries2::var_x(n) - &comp.apply(&h1)?;
        let n2 = &TruncatedSeries2::var_y(n) - &comp.apply(&h2)?;
        if n1 == p1 && n2 == p2 {
            break;
        }
        p1 = n1;
        p2 = n2;
    }
    // Inverse of (u, v) is T^{-1} o L^{-1}: substitute the linear inverse.
    let lx = &TruncatedSeries2::var_x(n).scalar_mul(&ia)
        + &TruncatedSeries2::var_y(n).scalar_mul(&ib);
    let ly = &TruncatedSeries2::var_x(n).scalar_mul(&ic)
        + &TruncatedSeries2::var_y(n).scalar_mul(&id);
    let comp = Composer::new(&lx, &ly)?;
    Ok((comp.apply(&p1)?, comp.apply(&p2)?))
}

impl Add for &TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn add(self, rhs: &TruncatedSeries2) -> TruncatedSeries2 {
        self.check_order(rhs);
        let mut out = self.clone();
        for (k, c) in rhs.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[k] += c;
            }
        }
        out
    }
}

impl Sub for &TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn sub(self, rhs: &TruncatedSeries2) -> TruncatedSeries2 {
        self.check_order(rhs);
        let mut out = self.clone();
        for (k, c) in rhs.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[k] -= c;
            }
        }
        out
    }
}

impl Mul for &TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn mul(self, rhs: &TruncatedSeries2) -> TruncatedSeries2 {
        self.check_order(rhs);
        let n = self.order;
        let mut out = TruncatedSeries2::zero(n);
        for (i1, j1, c1) in self.iter_nonzero() {
            let d1 = i1 + j1;
            for (i2, j2, c2) in rhs.iter_nonzero() {
                if d1 + i2 + j2 > n {
                    continue;
                }
                let prod = c1 * c2;
                out.coeffs[idx(i1 + i2, j1 + j2)] += &prod;
            }
        }
        out
    }
}

impl Neg for &TruncatedSeries2 {
    type Output = TruncatedSeries2;
    fn neg(self) -> TruncatedSeries2 {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            if !c.is_zero() {
                *c = -&*c;
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.iter_nonzero() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if i == 1 {
                write!(f, "*x")?;
            } else if i > 1 {
                write!(f, "*x^{i}")?;
            }
            if j == 1 {
                write!(f, "*y")?;
            } else if j > 1 {
                write!(f, "*y^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries2 {
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
    fn difference_of_squares() {
        let n = 4;
        let one_plus = &TruncatedSeries2::one(n) + &TruncatedSeries2::var_x(n);
        let one_minus = &TruncatedSeries2::one(n) - &TruncatedSeries2::var_x(n);
        let prod = &one_plus * &one_minus;
        let expect = &TruncatedSeries2::one(n) - &TruncatedSeries2::monomial(n, 2, 0, c(1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn identity_substitution() {
        let n = 6;
        let f = &TruncatedSeries2::var_x(n) + &TruncatedSeries2::var_y(n);
        let got = f
            .compose(&TruncatedSeries2::var_x(n), &TruncatedSeries2::var_y(n))
            .unwrap();
        assert_eq!(got, f);
    }

    #[test]
    fn monomial_substitution() {
        // f = xy, u = x^2, v = y -> x^2 y
        let n = 6;
        let f = TruncatedSeries2::monomial(n, 1, 1, c(1));
        let got = f
            .compose(
                &TruncatedSeries2::monomial(n, 2, 0, c(1)),
                &TruncatedSeries2::var_y(n),
            )
            .unwrap();
        assert_eq!(got, TruncatedSeries2::monomial(n, 2, 1, c(1)));
    }

    #[test]
    fn compose_rejects_shift() {
        let n = 4;
        let f = TruncatedSeries2::var_x(n);
        let u = TruncatedSeries2::one(n);
        assert!(matches!(
            f.compose(&u, &TruncatedSeries2::var_y(n)),
            Err(CoreError::NonVanishingShift)
        ));
    }

    #[test]
    fn invert_shear() {
        // (x + y^2, y) inverts to (x - y^2, y)
        let n = 8;
        let u = &TruncatedSeries2::var_x(n) + &TruncatedSeries2::monomial(n, 0, 2, c(1));
        let v = TruncatedSeries2::var_y(n);
        let (p, q) = invert_series_pair(&u, &v).unwrap();
        assert_eq!(p, &TruncatedSeries2::var_x(n) - &TruncatedSeries2::monomial(n, 0, 2, c(1)));
        assert_eq!(q, v);
    }

    #[test]
    fn invert_swap_is_involution() {
        let n = 5;
        let u = TruncatedSeries2::var_y(n);
        let v = TruncatedSeries2::var_x(n);
        let (p, q) = invert_series_pair(&u, &v).unwrap();
        assert_eq!(p, u);
        assert_eq!(q, v);
    }

    #[test]
    fn derive_monomial() {
        let n = 5;
        let f = TruncatedSeries2::monomial(n, 2, 1, c(1));
        assert_eq!(f.derivative(Var::X), TruncatedSeries2::monomial(n, 1, 1, c(2)));
    }
}
