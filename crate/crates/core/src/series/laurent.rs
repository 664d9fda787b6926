//! A Laurent tail in one variable: y^(-p) * (power series).

use crate::coeff::Coefficient;
use crate::error::{CoreError, Result};
use crate::series::one::TruncatedSeries1;

/// Represents y^(-pole_order) * series; pole_order 0 means holomorphic.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSlice {
    pole_order: usize,
    series: TruncatedSeries1,
}

impl LaurentSlice {
    pub fn new(pole_order: usize, series: TruncatedSeries1) -> Self {
        LaurentSlice { pole_order, series }
    }

    pub fn holomorphic(series: TruncatedSeries1) -> Self {
        LaurentSlice {
            pole_order: 0,
            series,
        }
    }

    /// num / den as a Laurent slice; den = y^v * unit determines the pole.
    pub fn from_ratio(num: &TruncatedSeries1, den: &TruncatedSeries1) -> Result<Self> {
        let v = den.valuation().ok_or(CoreError::DivisionByNonUnit)?;
        let unit = den
            .div_x_pow(v)
            .expect("valuation computed above");
        Ok(LaurentSlice {
            pole_order: v,
            series: num.try_mul(&unit.inverse()?)?,
        })
    }

    pub fn pole_order(&self) -> usize {
        self.pole_order
    }

    pub fn series(&self) -> &TruncatedSeries1 {
        &self.series
    }

    /// Coefficient of the y^(-1) term.
    pub fn residue(&self) -> Coefficient {
        if self.pole_order == 0 {
            Coefficient::zero()
        } else {
            self.series.coeff(self.pole_order - 1).clone()
        }
    }

    /// Coefficient of y^k (k may be negative down to -pole_order).
    pub fn coeff(&self, k: isize) -> Coefficient {
        let shifted = k + self.pole_order as isize;
        if shifted < 0 || shifted > self.series.order() as isize {
            Coefficient::zero()
        } else {
            self.series.coeff(shifted as usize).clone()
        }
    }

    pub fn mul_series(&self, f: &TruncatedSeries1) -> Result<Self> {
        Ok(LaurentSlice {
            pole_order: self.pole_order,
            series: self.series.try_mul(f)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coefficient;

    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    #[test]
    fn simple_pole() {
        let n = 4;
        let l = LaurentSlice::new(1, TruncatedSeries1::one(n));
        assert_eq!(l.residue(), c(1));
    }

    #[test]
    fn double_pole_reads_linear_coefficient() {
        // y^-2 (1 + mu y) -> residue mu
        let n = 4;
        let mu = Coefficient::from_ratio(5, 3);
        let s = TruncatedSeries1::from_coeffs(n, &[c(1), mu.clone()]);
        let l = LaurentSlice::new(2, s);
        assert_eq!(l.residue(), mu);
    }

    #[test]
    fn ratio_with_unit() {
        // y^-2 (1 + mu y) / (1 + y) -> residue mu - 1
        let n = 6;
        let mu = Coefficient::from_int(4);
        let num = TruncatedSeries1::from_coeffs(n, &[c(1), mu.clone()]);
        let den = TruncatedSeries1::from_coeffs(n, &[c(1), c(1)]);
        let l = LaurentSlice::from_ratio(&num, &den).unwrap();
        let l = LaurentSlice::new(2, l.series().clone());
        assert_eq!(l.residue(), &mu - &c(1));
    }

    #[test]
    fn holomorphic_residue_is_zero() {
        let l = LaurentSlice::holomorphic(TruncatedSeries1::one(3));
        assert_eq!(l.residue(), Coefficient::zero());
    }
}
