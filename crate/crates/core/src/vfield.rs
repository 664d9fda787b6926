//! Planar vector fields over exact truncated series: coordinate-change
//! pullbacks, chart transitions (including x = infinity), contact order and
//! Camacho–Sad indices along the coordinate axes.

use std::fmt;
use std::sync::OnceLock;

use crate::coeff::Coefficient;
use crate::error::{CoreError, Result};
use crate::series::{invert_series_pair, Composer, LaurentSlice, TruncatedSeries1, TruncatedSeries2, Var};

/// X = fx * d/dx + fy * d/dy with a shared truncation order.
#[derive(Clone, PartialEq)]
pub struct PlanarVectorField {
    fx: TruncatedSeries2,
    fy: TruncatedSeries2,
}

impl PlanarVectorField {
    pub fn new(fx: TruncatedSeries2, fy: TruncatedSeries2) -> Result<Self> {
        if fx.order() != fy.order() {
            return Err(CoreError::TruncationMismatch(fx.order(), fy.order()));
        }
        Ok(PlanarVectorField { fx, fy })
    }

    pub fn zero(order: usize) -> Self {
        PlanarVectorField {
            fx: TruncatedSeries2::zero(order),
            fy: TruncatedSeries2::zero(order),
        }
    }

    pub fn order(&self) -> usize {
        self.fx.order()
    }

    pub fn fx(&self) -> &TruncatedSeries2 {
        &self.fx
    }

    pub fn fy(&self) -> &TruncatedSeries2 {
        &self.fy
    }

    pub fn component(&self, var: Var) -> &TruncatedSeries2 {
        match var {
            Var::X => &self.fx,
            Var::Y => &self.fy,
        }
    }

    pub fn is_singular_at_origin(&self) -> bool {
        self.fx.constant_term().is_zero() && self.fy.constant_term().is_zero()
    }

    /// Entries of the linear part as a matrix [[a, b], [c, d]] acting on
    /// column vectors: X = (ax + by) d/dx + (cx + dy) d/dy + h.o.t.
    pub fn linear_matrix(&self) -> [[Coefficient; 2]; 2] {
        [
            [self.fx.at(1, 0).clone(), self.fx.at(0, 1).clone()],
            [self.fy.at(1, 0).clone(), self.fy.at(0, 1).clone()],
        ]
    }

    pub fn swap_vars(&self) -> Self {
        PlanarVectorField {
            fx: self.fy.swap_vars(),
            fy: self.fx.swap_vars(),
        }
    }

    pub fn truncate_to(&self, order: usize) -> Self {
        PlanarVectorField {
            fx: self.fx.truncate_to(order),
            fy: self.fy.truncate_to(order),
        }
    }

    /// det(X, Y) = fx * gy - fy * gx.
    pub fn det_with(&self, other: &Self) -> Result<TruncatedSeries2> {
        if self.order() != other.order() {
            return Err(CoreError::TruncationMismatch(self.order(), other.order()));
        }
        Ok(&(&self.fx * &other.fy) - &(&self.fy * &other.fx))
    }

    /// Foliation equality: X and Y are colinear mod truncation.
    pub fn colinear_with(&self, other: &Self) -> Result<bool> {
        Ok(self.det_with(other)?.is_zero())
    }
}

impl fmt::Display for PlanarVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx + ({}) dy", self.fx, self.fy)
    }
}

impl fmt::Debug for PlanarVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One of the coordinate axes, named by the equation that cuts it out.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    /// {y = 0}, the horizontal axis.
    YZero,
    /// {x = 0}, the vertical axis.
    XZero,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::YZero => "{y=0}",
            Axis::XZero => "{x=0}",
        }
    }
}

/// An invertible analytic change of coordinates (u, v) fixing the origin,
/// with a lazily computed compositional inverse.
pub struct CoordinateChange {
    u: TruncatedSeries2,
    v: TruncatedSeries2,
    inverse: OnceLock<Result<(TruncatedSeries2, TruncatedSeries2)>>,
}

impl Clone for CoordinateChange {
    fn clone(&self) -> Self {
        CoordinateChange {
            u: self.u.clone(),
            v: self.v.clone(),
            inverse: OnceLock::new(),
        }
    }
}

impl PartialEq for CoordinateChange {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.v == other.v
    }
}

impl CoordinateChange {
    pub fn new(u: TruncatedSeries2, v: TruncatedSeries2) -> Result<Self> {
        if u.order() != v.order() {
            return Err(CoreError::TruncationMismatch(u.order(), v.order()));
        }
        if !u.constant_term().is_zero() || !v.constant_term().is_zero() {
            return Err(CoreError::NonVanishingShift);
        }
        let det = &(&u.at(1, 0).clone() * v.at(0, 1)) - &(&u.at(0, 1).clone() * v.at(1, 0));
        if det.is_zero() {
            return Err(CoreError::SingularLinearPart);
        }
        Ok(CoordinateChange {
            u,
            v,
            inverse: OnceLock::new(),
        })
    }

    pub fn identity(order: usize) -> Self {
        CoordinateChange::new(
            TruncatedSeries2::var_x(order),
            TruncatedSeries2::var_y(order),
        )
        .expect("identity is invertible")
    }

    /// Linear change (x, y) -> (a x + b y, c x + d y).
    pub fn linear(order: usize, m: &[[Coefficient; 2]; 2]) -> Result<Self> {
        let x = TruncatedSeries2::var_x(order);
        let y = TruncatedSeries2::var_y(order);
        CoordinateChange::new(
            &x.scalar_mul(&m[0][0]) + &y.scalar_mul(&m[0][1]),
            &x.scalar_mul(&m[1][0]) + &y.scalar_mul(&m[1][1]),
        )
    }

    pub fn order(&self) -> usize {
        self.u.order()
    }

    pub fn u(&self) -> &TruncatedSeries2 {
        &self.u
    }

    pub fn v(&self) -> &TruncatedSeries2 {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u == TruncatedSeries2::var_x(self.order())
            && self.v == TruncatedSeries2::var_y(self.order())
    }

    /// True when the linear part is the identity matrix.
    pub fn is_tangent_to_identity(&self) -> bool {
        self.u.at(1, 0).is_one()
            && self.u.at(0, 1).is_zero()
            && self.v.at(1, 0).is_zero()
            && self.v.at(0, 1).is_one()
    }

    pub fn inverse_pair(&self) -> Result<(TruncatedSeries2, TruncatedSeries2)> {
        self.inverse
            .get_or_init(|| invert_series_pair(&self.u, &self.v))
            .clone()
    }

    pub fn inverse(&self) -> Result<CoordinateChange> {
        let (p, q) = self.inverse_pair()?;
        CoordinateChange::new(p, q)
    }

    /// Composition self o rhs (apply rhs first).
    pub fn compose(&self, rhs: &CoordinateChange) -> Result<CoordinateChange> {
        let comp = Composer::new(&rhs.u, &rhs.v)?;
        CoordinateChange::new(comp.apply(&self.u)?, comp.apply(&self.v)?)
    }

    /// Jacobian matrix as series entries [[u_x, u_y], [v_x, v_y]].
    pub fn jacobian(&self) -> [[TruncatedSeries2; 2]; 2] {
        [
            [self.u.derivative(Var::X), self.u.derivative(Var::Y)],
            [self.v.derivative(Var::X), self.v.derivative(Var::Y)],
        ]
    }
}

impl fmt::Debug for CoordinateChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(u, v) = ({}, {})", self.u, self.v)
    }
}

/// Pullback Phi^* X = DPhi^{-1} . (X o Phi), exact mod truncation.
pub fn pullback(x: &PlanarVectorField, phi: &CoordinateChange) -> Result<PlanarVectorField> {
    if x.order() != phi.order() {
        return Err(CoreError::TruncationMismatch(x.order(), phi.order()));
    }
    let comp = Composer::new(phi.u(), phi.v())?;
    let fx_phi = comp.apply(x.fx())?;
    let fy_phi = comp.apply(x.fy())?;
    let [[ux, uy], [vx, vy]] = phi.jacobian();
    let det = &(&ux * &vy) - &(&uy * &vx);
    let det_inv = det.inverse().map_err(|_| CoreError::SingularLinearPart)?;
    // adjugate / det
    let new_fx = &(&(&vy * &fx_phi) - &(&uy * &fy_phi)) * &det_inv;
    let new_fy = &(&(&ux * &fy_phi) - &(&vx * &fx_phi)) * &det_inv;
    PlanarVectorField::new(new_fx, new_fy)
}

/// Multiply the field by a unit series; same foliation, rescaled time.
pub fn multiply_by_unit(x: &PlanarVectorField, h: &TruncatedSeries2) -> Result<PlanarVectorField> {
    if !h.is_unit() {
        return Err(CoreError::NonUnitFactor);
    }
    PlanarVectorField::new(x.fx().try_mul(h)?, x.fy().try_mul(h)?)
}

/// Divide the field by a unit series.
pub fn divide_by_unit(x: &PlanarVectorField, h: &TruncatedSeries2) -> Result<PlanarVectorField> {
    multiply_by_unit(x, &h.inverse()?)
}

/// The axis is invariant iff the transverse component vanishes on it.
pub fn is_axis_invariant(x: &PlanarVectorField, axis: Axis) -> bool {
    match axis {
        Axis::YZero => x.fy().restrict_y0().is_zero(),
        Axis::XZero => x.fx().restrict_x0().is_zero(),
    }
}

/// Vanishing order of det(X1, X2) at the origin; `Infinite` when the
/// determinant vanishes identically mod truncation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ContactOrder {
    Finite(usize),
    Infinite,
}

pub fn contact_order(x1: &PlanarVectorField, x2: &PlanarVectorField) -> Result<ContactOrder> {
    let det = x1.det_with(x2)?;
    Ok(match det.valuation() {
        Some(v) => ContactOrder::Finite(v),
        None => ContactOrder::Infinite,
    })
}

/// The field rewritten in coordinates (x~ = 1/x, y) at infinity.
///
/// Requires polynomial dependence on x (degree <= 3, which covers every form
/// in scope). With `rescale` the result is multiplied by the minimal power of
/// x~ making it holomorphic; without it the raw transform must already be
/// holomorphic or the call fails.
pub fn chart_at_infinity(x: &PlanarVectorField, rescale: bool) -> Result<(PlanarVectorField, usize)> {
    const MAX_DEG: usize = 3;
    let n = x.order();
    for comp in [x.fx(), x.fy()] {
        let deg = comp.max_x_degree();
        if deg > MAX_DEG {
            return Err(CoreError::NotPolynomialInX {
                found: deg,
                max: MAX_DEG,
            });
        }
    }
    let dx = x.fx().max_x_degree();
    let dy = x.fy().max_x_degree();
    // d(x~)/dt = -x~^2 fx(1/x~, y); exponents i map to (2 - i) resp. (-i).
    let m = dx.saturating_sub(2).max(dy).max(0);
    if !rescale && m > 0 {
        return Err(CoreError::MeromorphicAtInfinity(m));
    }
    let mut new_fx = TruncatedSeries2::zero(n);
    for (i, j, c) in x.fx().iter_nonzero() {
        let e = 2 + m - i; // exponent of x~ after multiplying by x~^m
        if e + j <= n {
            new_fx.add_to(e, j, &(-c));
        }
    }
    let mut new_fy = TruncatedSeries2::zero(n);
    for (i, j, c) in x.fy().iter_nonzero() {
        let e = m - i;
        if e + j <= n {
            new_fy.add_to(e, j, c);
        }
    }
    Ok((PlanarVectorField::new(new_fx, new_fy)?, m))
}

/// Camacho–Sad index of the singularity at the origin along an invariant
/// coordinate axis.
#[derive(Clone, Debug, PartialEq)]
pub struct CSIndex {
    pub value: Coefficient,
    pub curve: Axis,
}

/// Residue at 0 of (d(transverse)/d(transverse) restricted to the axis)
/// divided by the tangential component restricted to the axis.
pub fn camacho_sad_index(x: &PlanarVectorField, axis: Axis) -> Result<CSIndex> {
    if !is_axis_invariant(x, axis) {
        return Err(CoreError::AxisNotInvariant(axis.name()));
    }
    let (num, den) = match axis {
        Axis::YZero => (x.fy().derivative(Var::Y).restrict_y0(), x.fx().restrict_y0()),
        Axis::XZero => (x.fx().derivative(Var::X).restrict_x0(), x.fy().restrict_x0()),
    };
    if den.is_zero() {
        return Err(CoreError::ZeroAxisComponent);
    }
    let slice = LaurentSlice::from_ratio(&num, &den)?;
    Ok(CSIndex {
        value: slice.residue(),
        curve: axis,
    })
}

/// The rational-in-x presentation produced by the gluing construction:
/// X = (f0 + f1 x + f2 x^2 + f3 x^3) / (g0 + g1 x) d/dx + d/dy.
#[derive(Clone, Debug)]
pub struct RationalInXField {
    pub f: [TruncatedSeries1; 4],
    pub g0: TruncatedSeries1,
    pub g1: TruncatedSeries1,
}

impl RationalInXField {
    pub fn order(&self) -> usize {
        self.g0.order()
    }

    /// Clear the denominator: the colinear polynomial field
    /// NUM(x, y) d/dx + DEN(x, y) d/dy.
    pub fn to_polynomial_field(&self, order: usize) -> Result<PlanarVectorField> {
        let mut fx = TruncatedSeries2::zero(order);
        for (i, fi) in self.f.iter().enumerate() {
            fx = &fx + &TruncatedSeries2::from_series1(fi, Var::Y, order).mul_var(Var::X, i);
        }
        let fy = &TruncatedSeries2::from_series1(&self.g0, Var::Y, order)
            + &TruncatedSeries2::from_series1(&self.g1, Var::Y, order).mul_var(Var::X, 1);
        PlanarVectorField::new(fx, fy)
    }
}

/// Result of reducing a constrained rational field to the versal form
/// x^2 dx + (y + x f(y)) dy.
#[derive(Clone, Debug)]
pub struct PreparationReduction {
    pub field: PlanarVectorField,
    /// f(y) with f(0) != 0.
    pub f: TruncatedSeries1,
    /// The change of coordinates applied to the polynomial representative.
    pub change: CoordinateChange,
}

/// Reduce a rational field satisfying the section-1 constraints
/// (f0 = f1 = f3 = 0, f2(0) != 0, g1(0) != 0, g0(0) = 0, g0'(0) != 0) to the
/// versal saddle-node form. The returned change pulls the output back to a
/// field colinear with the polynomial representative of the input.
pub fn reduce_preparation(r: &RationalInXField, order: usize) -> Result<PreparationReduction> {
    for (i, fi) in r.f.iter().enumerate() {
        if i != 2 && !fi.is_zero() {
            return Err(CoreError::ConstraintViolated(format!(
                "f{i} must vanish identically"
            )));
        }
    }
    let f2 = &r.f[2];
    if !f2.is_unit() {
        return Err(CoreError::ConstraintViolated("f2(0) = 0".into()));
    }
    if !r.g1.is_unit() {
        return Err(CoreError::ConstraintViolated("g1(0) = 0".into()));
    }
    if !r.g0.constant_term().is_zero() {
        return Err(CoreError::ConstraintViolated("g0(0) != 0".into()));
    }
    if r.g0.coeff(1).is_zero() {
        return Err(CoreError::ConstraintViolated("g0'(0) = 0".into()));
    }

    // Multiply by the denominator and divide by f2:
    //   x^2 dx + (g0/f2 + (g1/f2) x) dy = x^2 dx + (y G(y) + F(y) x) dy.
    let f2_at = f2.truncate_to(order);
    let big_f = r.g1.truncate_to(order).divide(&f2_at)?;
    let g_tilde = r
        .g0
        .truncate_to(order)
        .div_x_pow(1)
        .expect("g0(0) = 0 checked above");
    let big_g = g_tilde.divide(&f2_at)?;

    // Linearize y G(y) d/dy to G(0) y d/dy; in the new variable the x-slope
    // becomes F~ = (F phi') o phi^{-1}. Dividing the field by G(0) and
    // rescaling x by G(0) then leaves x^2 dx + (y + x f(y)) dy with f = F~.
    let phi = crate::normal_forms::linearize_1d(&big_g)?;
    let g0c = big_g.constant_term().clone();
    let phi_inv = phi.compose_inverse()?;
    let f_final = big_f.try_mul(&phi.derivative())?.compose(&phi_inv)?;

    let x2 = TruncatedSeries2::monomial(order, 2, 0, Coefficient::one());
    let fy = &TruncatedSeries2::var_y(order)
        + &TruncatedSeries2::from_series1(&f_final, Var::Y, order).mul_var(Var::X, 1);
    let field = PlanarVectorField::new(x2, fy)?;

    // h = (x / G(0), phi(y)) maps input coordinates to output coordinates;
    // pulling the output back along h recovers a field colinear with the
    // polynomial representative.
    let change = CoordinateChange::new(
        TruncatedSeries2::var_x(order).scalar_mul(&g0c.inv()?),
        TruncatedSeries2::from_series1(&phi, Var::Y, order),
    )?;

    Ok(PreparationReduction {
        field,
        f: f_final,
        change,
    })
}
