//! One-variable normal forms: linearization of y g(y) d/dy at a nonzero
//! linear coefficient, and reduction of y^(k+1)(1 + ...) d/dy to the
//! two-term polynomial model.

use crate::coeff::Coefficient;
use crate::error::{CoreError, Result};
use crate::series::TruncatedSeries1;

/// Normalizing coordinate for y g(y) d/dy with g(0) != 0: returns phi with
/// phi(0) = 0, phi'(0) = 1 and (phi push-forward) of the field equal to
/// g(0) y d/dy mod truncation.
///
/// Termwise: phi' y g = g(0) phi, solved degree by degree.
pub fn linearize_1d(g: &TruncatedSeries1) -> Result<TruncatedSeries1> {
    if !g.is_unit() {
        return Err(CoreError::ZeroLinearCoefficient);
    }
    let n = g.order();
    let g0_inv = g.constant_term().inv()?;
    // h = g/g(0) - 1 vanishes at 0
    let h = &g.scalar_mul(&g0_inv) - &TruncatedSeries1::one(n);
    let mut phi = TruncatedSeries1::identity(n);
    for j in 2..=n {
        // (j - 1) phi_j = - sum_{b=1}^{j-1} (j - b) phi_{j-b} h_b
        let mut acc = Coefficient::zero();
        for b in 1..j {
            let hb = h.coeff(b);
            if hb.is_zero() {
                continue;
            }
            let term = &(phi.coeff(j - b) * hb) * &Coefficient::from_int((j - b) as i64);
            acc += &term;
        }
        let denom = Coefficient::from_int((j - 1) as i64);
        phi.set_coeff(j, (-&acc).checked_div(&denom)?);
    }
    Ok(phi)
}

/// Push the 1-D field b(y) d/dy forward along y = phi(z) (i.e. rewrite it in
/// the z coordinate): z' = b(phi(z)) / phi'(z).
pub fn transform_1d_field(b: &TruncatedSeries1, phi: &TruncatedSeries1) -> Result<TruncatedSeries1> {
    let num = b.compose(phi)?;
    let den = phi.derivative();
    num.divide(&den)
}

/// Express the field b(y) d/dy in the coordinate z = psi(y): the new field
/// is (psi' b) o psi^{-1}.
pub fn push_forward_1d(b: &TruncatedSeries1, psi: &TruncatedSeries1) -> Result<TruncatedSeries1> {
    let prod = psi.derivative().try_mul(b)?;
    prod.compose(&psi.compose_inverse()?)
}

/// Canonical data of a 1-D parabolic field b(y) d/dy with b = y^{k+1} u(y),
/// u(0) != 0: the model is z^{k+1} + mu z^(2k+1).
#[derive(Clone, Debug)]
pub struct OneDimNormalForm {
    pub k: usize,
    pub mu: Coefficient,
    /// y = change(z) maps the model coordinate to the original one.
    pub change: TruncatedSeries1,
    pub model: TruncatedSeries1,
}

/// Reduce b(y) d/dy, vanishing to order k+1 >= 2, to z^{k+1} + mu z^{2k+1}.
/// The leading-coefficient normalization needs an exact k-th root; k = 1
/// always works over Q(i).
pub fn one_dim_normal_form(b: &TruncatedSeries1) -> Result<OneDimNormalForm> {
    let n = b.order();
    let val = b.valuation().ok_or(CoreError::TruncationTooShallow {
        needed: 2,
        have: n,
    })?;
    if val < 2 {
        return Err(CoreError::ConstraintViolated(
            "1-d field must vanish to order >= 2".into(),
        ));
    }
    let k = val - 1;
    let b0 = b.coeff(val).clone();

    // y = beta z with beta^k b0 = 1
    let beta = b0
        .inv()?
        .nth_root_exact(k as u32)
        .ok_or(CoreError::RootUnavailable(k as u32))?;
    let mut change = TruncatedSeries1::identity(n).scalar_mul(&beta);
    let mut cur = transform_1d_field(b, &change)?;
    debug_assert_eq!(cur.coeff(val), &Coefficient::one());

    // Kill every coefficient beyond z^{k+1} except z^{2k+1}, lowest first;
    // the step z -> z + c z^(m+1) shifts index k+1+m by (k - m) c exactly.
    loop {
        let mut bad = None;
        for m in 1..=n.saturating_sub(k + 1) {
            if m == k {
                continue;
            }
            let idx = k + 1 + m;
            if idx > n {
                break;
            }
            if !cur.coeff(idx).is_zero() {
                bad = Some(m);
                break;
            }
        }
        let Some(m) = bad else { break };
        let gamma = cur.coeff(k + 1 + m).clone();
        let denom = Coefficient::from_int(k as i64 - m as i64);
        let c = (-&gamma).checked_div(&denom)?;
        let step = &TruncatedSeries1::identity(n) + &TruncatedSeries1::monomial(n, m + 1, c);
        cur = transform_1d_field(&cur, &step)?;
        change = change.compose(&step)?;
        debug_assert!(cur.coeff(k + 1 + m).is_zero());
    }

    let mu = if 2 * k + 1 <= n {
        cur.coeff(2 * k + 1).clone()
    } else {
        Coefficient::zero()
    };
    Ok(OneDimNormalForm {
        k,
        mu,
        change,
        model: cur,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    #[test]
    fn constant_g_gives_identity() {
        let n = 8;
        let g = TruncatedSeries1::constant(n, Coefficient::from_ratio(7, 2));
        assert_eq!(linearize_1d(&g).unwrap(), TruncatedSeries1::identity(n));
    }

    #[test]
    fn linearize_verified_by_push_forward() {
        // g = 1 + y at order 12: the push-forward of y g(y) d/dy along phi
        // must be exactly y d/dy.
        let n = 12;
        let g = TruncatedSeries1::from_coeffs(n, &[c(1), c(1)]);
        let phi = linearize_1d(&g).unwrap();
        let field = g.try_mul(&TruncatedSeries1::identity(n)).unwrap();
        let pushed = push_forward_1d(&field, &phi).unwrap();
        assert_eq!(pushed, TruncatedSeries1::identity(n));
    }

    #[test]
    fn linearize_matches_undetermined_coefficients() {
        // g = 1 - y at order 6: solve phi' y (1 - y) = phi by brute force
        // small linear systems and compare.
        let n = 6;
        let g = TruncatedSeries1::from_coeffs(n, &[c(1), c(-1)]);
        let phi = linearize_1d(&g).unwrap();
        // brute force: phi_j (j-1) = sum_{b} (j-b) phi_{j-b} h_b with h = -y
        // i.e. (j-1) phi_j = (j-1) phi_{j-1} -> phi_j = phi_{j-1} = 1
        for j in 1..=n {
            assert_eq!(phi.coeff(j), &c(1), "coefficient {j}");
        }
    }

    #[test]
    fn linearize_scaling_equivariance() {
        // replacing g(y) by g(c y) conjugates phi by z -> c z.
        let n = 10;
        let g = TruncatedSeries1::from_coeffs(n, &[c(2), c(1), c(0), c(-3)]);
        let phi = linearize_1d(&g).unwrap();
        let scale = Coefficient::from_ratio(3, 2);
        let mut gc = TruncatedSeries1::zero(n);
        for j in 0..=n {
            gc.set_coeff(j, g.coeff(j) * &scale.pow_u(j));
        }
        let phi_c = linearize_1d(&gc).unwrap();
        // phi_c(y) = phi(c y) / c
        let scaled = phi
            .compose(&TruncatedSeries1::identity(n).scalar_mul(&scale))
            .unwrap()
            .scalar_mul(&scale.inv().unwrap());
        assert_eq!(phi_c, scaled);
    }

    #[test]
    fn one_dim_model_two_terms() {
        // b = y^2 (1 + y)^3: k = 1, model z^2 + mu z^3 for the computed mu.
        let n = 12;
        let unit = TruncatedSeries1::from_coeffs(n, &[c(1), c(1)]);
        let unit3 = &(&unit * &unit) * &unit;
        let b = unit3.mul_x_pow(2);
        let nf = one_dim_normal_form(&b).unwrap();
        assert_eq!(nf.k, 1);
        for idx in 0..=n {
            if idx != 2 && idx != 3 {
                assert!(nf.model.coeff(idx).is_zero(), "index {idx}");
            }
        }
        assert_eq!(nf.model.coeff(3), &nf.mu);
        // verify the change reproduces the model exactly
        let again = transform_1d_field(&b, &nf.change).unwrap();
        assert_eq!(again, nf.model);
    }

    #[test]
    fn one_dim_mu_matches_residue() {
        // The model z^{k+1}(1 + mu z^k) has dual-form residue -mu, and the
        // residue of dy/b(y) is invariant under the reduction.
        let n = 14;
        let b = TruncatedSeries1::from_coeffs(n, &[c(0), c(0), c(0), c(2), c(1), c(5)]);
        // b = 2 y^3 + y^4 + 5 y^5: k = 2
        let nf = one_dim_normal_form(&b).unwrap();
        assert_eq!(nf.k, 2);
        let unit = b.div_x_pow(3).unwrap();
        let inv = unit.inverse().unwrap();
        // residue of y^{-3} inv = coefficient of y^2 in inv
        let res = inv.coeff(2).clone();
        assert_eq!(nf.mu, -&res);
    }
}
