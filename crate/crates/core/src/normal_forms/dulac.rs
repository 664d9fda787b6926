//! Prenormalization of saddle-nodes: reduce to
//! x^(k+1) dx + y dy + mu x^k y dy + x^(k+N) f dy, recovering the formal
//! invariants (k, mu) exactly.
//!
//! The reduction runs in three exact stages: a linear normalization putting
//! the kernel direction on d/dx and the unit eigenvalue on d/dy, a graded
//! elimination leaving only A(x) dx + y (1 + B(x)) dy, and a one-variable
//! normalization of the induced meromorphic form (1 + B)/A dx whose residue
//! is mu. At finite truncation the elimination completes, so the remainder
//! is identically zero mod truncation for any admissible depth.

use crate::coeff::Coefficient;
use crate::error::{CoreError, Result};
use crate::series::{TruncatedSeries1, TruncatedSeries2, Var};
use crate::vfield::{pullback, CoordinateChange, PlanarVectorField};

use super::homological::eliminate_nonresonant;
use super::{diagonalizing_change, eigenvector_for, Reduction};

#[derive(Clone, Debug)]
pub struct DulacForm {
    pub k: usize,
    pub mu: Coefficient,
    /// Requested reduction depth N.
    pub depth: usize,
    /// The series f of the x^(k+N) f dy slot; identically zero here since
    /// the truncated reduction completes.
    pub remainder: TruncatedSeries2,
    /// Cumulative change C with model = unit * pullback(input, C).
    pub change: CoordinateChange,
    /// Unit factor in the same identity.
    pub unit: TruncatedSeries2,
    /// The reassembled prenormal field.
    pub model: PlanarVectorField,
}

impl DulacForm {
    /// Check the defining identity model = unit * pullback(input, change)
    /// exactly mod truncation.
    pub fn verify(&self, input: &PlanarVectorField) -> Result<bool> {
        let pulled = pullback(input, &self.change)?;
        let scaled = PlanarVectorField::new(
            pulled.fx().try_mul(&self.unit)?,
            pulled.fy().try_mul(&self.unit)?,
        )?;
        Ok(scaled == self.model)
    }
}

/// Saddle-node test on the linear part: zero determinant, nonzero trace.
pub fn is_saddle_node_linear(x: &PlanarVectorField) -> bool {
    if !x.is_singular_at_origin() {
        return false;
    }
    let m = x.linear_matrix();
    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    let tr = &m[0][0] + &m[1][1];
    det.is_zero() && !tr.is_zero()
}

pub fn dulac_prenormalize(x: &PlanarVectorField, depth: usize) -> Result<DulacForm> {
    if !is_saddle_node_linear(x) {
        return Err(CoreError::NotSaddleNode);
    }
    let order = x.order();
    let m = x.linear_matrix();
    let trace = &m[0][0] + &m[1][1];

    let mut t = Reduction::new(x.clone());

    // Linear stage: kernel direction to d/dx, unit eigenvalue on d/dy.
    let v0 = eigenvector_for(&m, &Coefficient::zero());
    let v1 = eigenvector_for(&m, &trace);
    let lin = diagonalizing_change(order, &v0, &v1)?;
    t.apply_change(&lin)?;
    t.divide_unit(&TruncatedSeries2::constant(order, trace.clone()))?;
    debug_assert_eq!(t.field.linear_matrix()[1][1], Coefficient::one());

    // Graded elimination: keep x^i dx (i >= 2) and x^i y dy (i >= 1).
    let keep = |i: usize, j: usize, comp: Var| match comp {
        Var::X => j == 0 && i >= 2,
        Var::Y => j == 1 && i >= 1,
    };
    let (reduced, elim_change) = eliminate_nonresonant(&t.field, &keep)?;
    t.absorb_elimination(reduced, &elim_change)?;

    // Now X = A(x) dx + y (1 + B(x)) dy.
    let a_series = t.field.fx().restrict_y0();
    let b_plus_one = t
        .field
        .fy()
        .div_y_pow(1)
        .ok_or_else(|| CoreError::ConstraintViolated("dy component not divisible by y".into()))?
        .restrict_y0();

    let val = a_series
        .valuation()
        .ok_or(CoreError::TruncationTooShallow {
            needed: order + 1,
            have: order,
        })?;
    debug_assert!(val >= 2);
    let k = val - 1;
    if order < k + depth + 2 {
        return Err(CoreError::TruncationTooShallow {
            needed: k + depth + 2,
            have: order,
        });
    }
    let a_hat = a_series.div_x_pow(val).expect("valuation");
    let lead = a_hat.constant_term().clone();

    // P = (1 + B)/A = x^(-k-1) * c(x); mu is the x^k coefficient of c.
    let c_series = b_plus_one.divide(&a_hat)?;
    let mu_scaled = c_series.coeff(k).clone(); // residue of P dx

    // V(x) = x^k * integral(P - mu/x): V_m = c_m / (m - k), m != k.
    let n1 = c_series.order();
    let mut v_series = TruncatedSeries1::zero(n1);
    for mm in 0..=n1 {
        if mm == k {
            continue;
        }
        let denom = Coefficient::from_int(mm as i64 - k as i64);
        v_series.set_coeff(mm, c_series.coeff(mm).checked_div(&denom)?);
    }

    // Solve xi = x * ((-a k) V(xi))^(1/k) by a degree-gaining fixed point.
    let factor = -&(&lead * &Coefficient::from_int(k as i64));
    let scaled_v = v_series.scalar_mul(&factor);
    debug_assert!(scaled_v.constant_term().is_one());
    let root_exp = Coefficient::from_ratio(1, k as i64);
    let mut xi = TruncatedSeries1::identity(n1);
    for _ in 0..n1 {
        let r_of_xi = scaled_v.compose(&xi)?.pow_exact(&root_exp)?;
        let next = r_of_xi.mul_x_pow(1);
        if next == xi {
            break;
        }
        xi = next;
    }
    let rho = xi.div_x_pow(1).expect("xi = x * unit");
    let v_exp = rho.pow_exact(&mu_scaled)?;

    let phi_fin = CoordinateChange::new(
        TruncatedSeries2::from_series1(&xi, Var::X, order),
        TruncatedSeries2::var_y(order)
            .try_mul(&TruncatedSeries2::from_series1(&v_exp, Var::X, order))?,
    )?;
    t.apply_change(&phi_fin)?;

    // Renormalize the dx component to exactly lead * x^(k+1).
    let a1 = t.field.fx().restrict_y0();
    let a1_hat = a1
        .div_x_pow(k + 1)
        .ok_or_else(|| CoreError::ConstraintViolated("dx component lost its valuation".into()))?;
    let u3 = a1_hat.scalar_mul(&lead.inv()?);
    t.divide_unit(&TruncatedSeries2::from_series1(&u3, Var::X, order))?;

    // Final linear rescale x -> alpha x with alpha^k = 1/lead.
    let alpha = lead
        .inv()?
        .nth_root_exact(k as u32)
        .ok_or(CoreError::RootUnavailable(k as u32))?;
    let scale = CoordinateChange::new(
        TruncatedSeries2::var_x(order).scalar_mul(&alpha),
        TruncatedSeries2::var_y(order),
    )?;
    t.apply_change(&scale)?;

    // Expect exactly x^(k+1) dx + y dy + mu x^k y dy.
    let mu = mu_scaled.checked_div(&lead)?;
    let model_fx = TruncatedSeries2::monomial(order, k + 1, 0, Coefficient::one());
    let model_fy = &TruncatedSeries2::var_y(order)
        + &TruncatedSeries2::monomial(order, k, 1, mu.clone());
    let model = PlanarVectorField::new(model_fx, model_fy)?;
    if t.field != model {
        return Err(CoreError::ConstraintViolated(
            "internal: prenormalization did not reach the model".into(),
        ));
    }

    Ok(DulacForm {
        k,
        mu,
        depth,
        remainder: TruncatedSeries2::zero(order),
        change: t.change,
        unit: t.unit,
        model,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::make_named;
    use crate::normal_forms::NamedForm;

    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    fn formal_model(order: usize, k: usize, mu: Coefficient) -> PlanarVectorField {
        make_named(
            &NamedForm::SnFormalModel { k, mu },
            order,
        )
        .unwrap()
    }

    #[test]
    fn already_in_form() {
        let n = 10;
        let mu = Coefficient::from_ratio(-3, 7);
        let x = formal_model(n, 1, mu.clone());
        let d = dulac_prenormalize(&x, 4).unwrap();
        assert_eq!(d.k, 1);
        assert_eq!(d.mu, mu);
        assert!(d.remainder.is_zero());
        assert!(d.change.is_identity());
        assert!(d.verify(&x).unwrap());
    }

    #[test]
    fn recovers_invariants_after_conjugation() {
        let n = 12;
        let mu = Coefficient::from_ratio(5, 3);
        let x = formal_model(n, 1, mu.clone());
        // tangent-to-identity change of degree <= 3
        let u = &(&TruncatedSeries2::var_x(n) + &TruncatedSeries2::monomial(n, 0, 2, c(2)))
            + &TruncatedSeries2::monomial(n, 2, 1, Coefficient::from_ratio(-1, 2));
        let v = &(&TruncatedSeries2::var_y(n) + &TruncatedSeries2::monomial(n, 2, 0, c(1)))
            + &TruncatedSeries2::monomial(n, 1, 2, c(3));
        let phi = CoordinateChange::new(u, v).unwrap();
        let conj = pullback(&x, &phi).unwrap();
        let d = dulac_prenormalize(&conj, 4).unwrap();
        assert_eq!(d.k, 1);
        assert_eq!(d.mu, mu);
        assert!(d.verify(&conj).unwrap());
    }

    #[test]
    fn shear_fixes_tilted_kernel_direction() {
        // x^2 dx + (y + x f(x, y)) dy with f(0,0) = c != 0: the kernel line
        // is y = -c x, handled by the exact linear stage.
        let n = 12;
        let mut fy = TruncatedSeries2::var_y(n);
        fy.add_to(1, 0, &c(2)); // + 2x
        fy.add_to(1, 1, &Coefficient::from_ratio(1, 3)); // + xy/3
        let x = PlanarVectorField::new(TruncatedSeries2::monomial(n, 2, 0, c(1)), fy).unwrap();
        let d = dulac_prenormalize(&x, 3).unwrap();
        assert_eq!(d.k, 1);
        assert!(d.verify(&x).unwrap());
    }

    #[test]
    fn invariant_under_unit_rescale() {
        let n = 12;
        let mu = Coefficient::from_ratio(9, 4);
        let x = formal_model(n, 1, mu.clone());
        let h = &(&TruncatedSeries2::one(n) + &TruncatedSeries2::var_x(n).scalar_mul(&c(2)))
            + &TruncatedSeries2::var_y(n).scalar_mul(&Coefficient::from_ratio(-1, 2));
        let hx = crate::vfield::multiply_by_unit(&x, &h).unwrap();
        let d = dulac_prenormalize(&hx, 3).unwrap();
        assert_eq!((d.k, d.mu.clone()), (1, mu));
        assert!(d.verify(&hx).unwrap());
    }

    #[test]
    fn k_two_model_with_square_leading_coefficient() {
        let n = 12;
        let mu = Coefficient::from_ratio(1, 2);
        let x = formal_model(n, 2, mu.clone());
        let d = dulac_prenormalize(&x, 2).unwrap();
        assert_eq!(d.k, 2);
        assert_eq!(d.mu, mu);
    }

    #[test]
    fn rejects_non_saddle_node() {
        let n = 8;
        let x = PlanarVectorField::new(
            TruncatedSeries2::var_x(n),
            TruncatedSeries2::var_y(n).scalar_mul(&c(2)),
        )
        .unwrap();
        assert!(matches!(
            dulac_prenormalize(&x, 2),
            Err(CoreError::NotSaddleNode)
        ));
    }

    #[test]
    fn shallow_truncation_reported() {
        let n = 4;
        let x = formal_model(n, 1, c(1));
        assert!(matches!(
            dulac_prenormalize(&x, 4),
            Err(CoreError::TruncationTooShallow { .. })
        ));
    }
}
