//! Formal normal forms: Dulac prenormalization of saddle-nodes, the two
//! Poincaré–Dulac reductions, 1-D linearization, and constructors plus
//! recognizers for the named polynomial-in-x forms.

mod dulac;
mod homological;
mod one_dim;
mod poincare_dulac;

pub use dulac::{dulac_prenormalize, is_saddle_node_linear, DulacForm};
pub use one_dim::{linearize_1d, one_dim_normal_form, push_forward_1d, transform_1d_field, OneDimNormalForm};
pub use poincare_dulac::{formal_normal_form, FormalConjugacy};

use crate::coeff::Coefficient;
use crate::error::{CoreError, Result};
use crate::series::{TruncatedSeries1, TruncatedSeries2, Var};
use crate::vfield::{CoordinateChange, PlanarVectorField};

/// Running state of a reduction: the current field together with the
/// cumulative change and unit factor, maintaining
/// field = unit * pullback(input, change) as an exact invariant.
pub(crate) struct Reduction {
    pub field: PlanarVectorField,
    pub change: CoordinateChange,
    pub unit: TruncatedSeries2,
}

impl Reduction {
    pub fn new(field: PlanarVectorField) -> Self {
        let order = field.order();
        Reduction {
            field,
            change: CoordinateChange::identity(order),
            unit: TruncatedSeries2::one(order),
        }
    }

    pub fn apply_change(&mut self, phi: &CoordinateChange) -> Result<()> {
        self.field = crate::vfield::pullback(&self.field, phi)?;
        self.change = self.change.compose(phi)?;
        let comp = crate::series::Composer::new(phi.u(), phi.v())?;
        self.unit = comp.apply(&self.unit)?;
        Ok(())
    }

    pub fn divide_unit(&mut self, u: &TruncatedSeries2) -> Result<()> {
        self.field = crate::vfield::divide_by_unit(&self.field, u)?;
        self.unit = self.unit.divide(u)?;
        Ok(())
    }

    pub fn absorb_elimination(
        &mut self,
        reduced: PlanarVectorField,
        change: &CoordinateChange,
    ) -> Result<()> {
        self.field = reduced;
        self.change = self.change.compose(change)?;
        let comp = crate::series::Composer::new(change.u(), change.v())?;
        self.unit = comp.apply(&self.unit)?;
        Ok(())
    }
}

/// Eigenvector of a 2x2 matrix for a given eigenvalue, normalized so its
/// first nonzero entry is 1.
pub(crate) fn eigenvector_for(m: &[[Coefficient; 2]; 2], lambda: &Coefficient) -> [Coefficient; 2] {
    let a = &m[0][0] - lambda;
    let b = m[0][1].clone();
    let c = m[1][0].clone();
    let d = &m[1][1] - lambda;
    let raw = if !b.is_zero() {
        [b.clone(), -&a]
    } else if !a.is_zero() {
        [Coefficient::zero(), Coefficient::one()]
    } else if !c.is_zero() {
        [-&d, c.clone()]
    } else if !d.is_zero() {
        [Coefficient::one(), Coefficient::zero()]
    } else {
        [Coefficient::one(), Coefficient::zero()]
    };
    let scale = if !raw[0].is_zero() {
        raw[0].inv().expect("nonzero")
    } else {
        raw[1].inv().expect("eigenvector nonzero")
    };
    [&raw[0] * &scale, &raw[1] * &scale]
}

/// Linear change whose columns are the two given vectors.
pub(crate) fn diagonalizing_change(
    order: usize,
    col_x: &[Coefficient; 2],
    col_y: &[Coefficient; 2],
) -> Result<CoordinateChange> {
    CoordinateChange::linear(
        order,
        &[
            [col_x[0].clone(), col_y[0].clone()],
            [col_x[1].clone(), col_y[1].clone()],
        ],
    )
}

/// The named polynomial forms the library constructs and recognizes.
///
/// Sn* are the saddle-node forms polynomial in x; Pd* are the models of the
/// two Poincaré–Dulac theorems.
#[derive(Clone, Debug, PartialEq)]
pub enum NamedForm {
    /// x^2 dx + (y + x f(y)) dy (versal family; f unconstrained).
    SnVersal { f: TruncatedSeries1 },
    /// Same with f(0) = 0: the central manifold is {y = 0}.
    SnCentral { f: TruncatedSeries1 },
    /// -x dx + mu (f(y) + x) y dy with f(0) = 1 (saddle of eigenratio -mu).
    SaddleForm { mu: Coefficient, f: TruncatedSeries1 },
    /// x^2 dx + (y + x y f(x^n y)) dy with f(0) = mu (n-fold blown-down
    /// central form; the Brjuno-announced shape).
    SnBrjuno { f: TruncatedSeries1, n: usize },
    /// x^(k+1) dx + y dy + mu x^k y dy.
    SnFormalModel { k: usize, mu: Coefficient },
    /// lambda (k x + y^k) dx + lambda y dy (k = 1 is the non-diagonal
    /// linear case).
    PdNode { lambda: Coefficient, k: usize },
    /// l1 x dx + l2 y dy.
    PdLinear { l1: Coefficient, l2: Coefficient },
    /// (a x - b y) dx + (b x + a y) dy, a, b real nonzero.
    PdRealFocus { a: Coefficient, b: Coefficient },
    /// q x dx - (p + u^k + mu u^(2k)) y dy with u = x^p y^q; eigenratio -p/q.
    PdResonantSaddle {
        p: u64,
        q: u64,
        k: usize,
        mu: Coefficient,
    },
    /// x dx + (y^k + mu y^(2k)) y dy.
    PdSaddleNode { k: usize, mu: Coefficient },
}

impl NamedForm {
    pub fn describe(&self) -> String {
        match self {
            NamedForm::SnVersal { .. } => "saddle-node versal form x^2 dx + (y + x f(y)) dy".into(),
            NamedForm::SnCentral { .. } => {
                "saddle-node central-manifold form x^2 dx + (y + x f(y)) dy, f(0) = 0".into()
            }
            NamedForm::SaddleForm { mu, .. } => {
                format!("saddle form -x dx + mu (f(y) + x) y dy, mu = {mu}")
            }
            NamedForm::SnBrjuno { n, .. } => {
                format!("staircase central form x^2 dx + (y + x y f(x^{n} y)) dy")
            }
            NamedForm::SnFormalModel { k, mu } => {
                format!("saddle-node formal model, k = {k}, mu = {mu}")
            }
            NamedForm::PdNode { lambda, k } => format!("resonant node model, lambda = {lambda}, k = {k}"),
            NamedForm::PdLinear { l1, l2 } => format!("linear diagonal model ({l1}, {l2})"),
            NamedForm::PdRealFocus { a, b } => format!("real focus model, a = {a}, b = {b}"),
            NamedForm::PdResonantSaddle { p, q, k, mu } => {
                format!("resonant saddle model, ratio -{p}/{q}, k = {k}, mu = {mu}")
            }
            NamedForm::PdSaddleNode { k, mu } => {
                format!("saddle-node one-variable model, k = {k}, mu = {mu}")
            }
        }
    }
}

/// Embed a 1-variable series as a series in the monomial x^p y^q.
pub(crate) fn series_in_monomial(
    s: &TruncatedSeries1,
    p: usize,
    q: usize,
    order: usize,
) -> TruncatedSeries2 {
    let mut out = TruncatedSeries2::zero(order);
    for t in 0..=s.order() {
        let c = s.coeff(t);
        if c.is_zero() {
            continue;
        }
        let (i, j) = (p * t, q * t);
        if i + j <= order {
            out.add_to(i, j, c);
        }
    }
    out
}

/// Build the exact field of a named form at the given truncation order.
pub fn make_named(form: &NamedForm, order: usize) -> Result<PlanarVectorField> {
    let one = Coefficient::one();
    match form {
        NamedForm::SnVersal { f } | NamedForm::SnCentral { f } => {
            if matches!(form, NamedForm::SnCentral { .. }) && !f.constant_term().is_zero() {
                return Err(CoreError::ConstraintViolated(
                    "central form requires f(0) = 0".into(),
                ));
            }
            let fx = TruncatedSeries2::monomial(order, 2, 0, one);
            let fy = &TruncatedSeries2::var_y(order)
                + &TruncatedSeries2::from_series1(f, Var::Y, order).mul_var(Var::X, 1);
            PlanarVectorField::new(fx, fy)
        }
        NamedForm::SaddleForm { mu, f } => {
            if !f.constant_term().is_one() {
                return Err(CoreError::ConstraintViolated(
                    "saddle form requires f(0) = 1".into(),
                ));
            }
            if mu.is_zero() {
                return Err(CoreError::ConstraintViolated("mu must be nonzero".into()));
            }
            let fx = TruncatedSeries2::var_x(order).scalar_mul(&-&one);
            let inner = &TruncatedSeries2::from_series1(f, Var::Y, order)
                + &TruncatedSeries2::var_x(order);
            let fy = inner
                .try_mul(&TruncatedSeries2::var_y(order))?
                .scalar_mul(mu);
            PlanarVectorField::new(fx, fy)
        }
        NamedForm::SnBrjuno { f, n } => {
            let fx = TruncatedSeries2::monomial(order, 2, 0, one);
            let f_in = series_in_monomial(f, *n, 1, order);
            let xy = TruncatedSeries2::monomial(order, 1, 1, Coefficient::one());
            let fy = &TruncatedSeries2::var_y(order) + &xy.try_mul(&f_in)?;
            PlanarVectorField::new(fx, fy)
        }
        NamedForm::SnFormalModel { k, mu } => {
            if *k == 0 {
                return Err(CoreError::ConstraintViolated("k must be >= 1".into()));
            }
            let fx = TruncatedSeries2::monomial(order, k + 1, 0, one);
            let fy = &TruncatedSeries2::var_y(order)
                + &TruncatedSeries2::monomial(order, *k, 1, mu.clone());
            PlanarVectorField::new(fx, fy)
        }
        NamedForm::PdNode { lambda, k } => {
            if *k == 0 || lambda.is_zero() {
                return Err(CoreError::ConstraintViolated(
                    "node model needs k >= 1 and lambda != 0".into(),
                ));
            }
            let fx = &TruncatedSeries2::var_x(order)
                .scalar_mul(&(lambda * &Coefficient::from_int(*k as i64)))
                + &TruncatedSeries2::monomial(order, 0, *k, lambda.clone());
            let fy = TruncatedSeries2::var_y(order).scalar_mul(lambda);
            PlanarVectorField::new(fx, fy)
        }
        NamedForm::PdLinear { l1, l2 } => PlanarVectorField::new(
            TruncatedSeries2::var_x(order).scalar_mul(l1),
            TruncatedSeries2::var_y(order).scalar_mul(l2),
        ),
        NamedForm::PdRealFocus { a, b } => {
            if !a.is_real() || !b.is_real() || a.is_zero() || b.is_zero() {
                return Err(CoreError::ConstraintViolated(
                    "focus model needs real nonzero a, b".into(),
                ));
            }
            let x = TruncatedSeries2::var_x(order);
            let y = TruncatedSeries2::var_y(order);
            PlanarVectorField::new(
                &x.scalar_mul(a) - &y.scalar_mul(b),
                &x.scalar_mul(b) + &y.scalar_mul(a),
            )
        }
        NamedForm::PdResonantSaddle { p, q, k, mu } => {
            if *p == 0 || *q == 0 || *k == 0 {
                return Err(CoreError::ConstraintViolated(
                    "resonant saddle model needs p, q, k >= 1".into(),
                ));
            }
            let (pu, qu) = (*p as usize, *q as usize);
            let fx = TruncatedSeries2::var_x(order)
                .scalar_mul(&Coefficient::from_int(*q as i64));
            let mut paren = TruncatedSeries2::constant(order, Coefficient::from_int(*p as i64));
            if (pu + qu) * k <= order {
                paren.add_to(pu * k, qu * k, &Coefficient::one());
            }
            if (pu + qu) * 2 * k <= order {
                paren.add_to(2 * pu * k, 2 * qu * k, mu);
            }
            let fy = paren
                .try_mul(&TruncatedSeries2::var_y(order))?
                .scalar_mul(&-&one);
            PlanarVectorField::new(fx, fy)
        }
        NamedForm::PdSaddleNode { k, mu } => {
            if *k == 0 {
                return Err(CoreError::ConstraintViolated("k must be >= 1".into()));
            }
            let fx = TruncatedSeries2::var_x(order);
            let mut fy = TruncatedSeries2::monomial(order, 0, k + 1, one);
            if 2 * k + 1 <= order {
                fy.add_to(0, 2 * k + 1, mu);
            }
            PlanarVectorField::new(fx, fy)
        }
    }
}

fn series1_of_x_slope(fy: &TruncatedSeries2) -> Option<TruncatedSeries1> {
    // fy must be y + x f(y): coefficient (0,1) = 1, (1, j) = f_j, rest zero
    let order = fy.order();
    let mut f = TruncatedSeries1::zero(order);
    for (i, j, c) in fy.iter_nonzero() {
        match (i, j) {
            (0, 1) => {
                if !c.is_one() {
                    return None;
                }
            }
            (1, jj) => f.set_coeff(jj, c.clone()),
            _ => return None,
        }
    }
    Some(f)
}

/// Recognize an exact named shape, most specific first. Returns `None` for
/// anything that does not match coefficientwise.
pub fn recognize(x: &PlanarVectorField) -> Option<NamedForm> {
    if !x.is_singular_at_origin() {
        return None;
    }
    let order = x.order();
    let fx = x.fx();
    let fy = x.fy();

    let x2 = TruncatedSeries2::monomial(order, 2, 0, Coefficient::one());

    // SnFormalModel: x^(k+1) dx, y + mu x^k y dy
    'formal: {
        let mut k_found = None;
        for (i, j, c) in fx.iter_nonzero() {
            if j != 0 || !c.is_one() || k_found.is_some() || i < 2 {
                break 'formal;
            }
            k_found = Some(i - 1);
        }
        let Some(k) = k_found else { break 'formal };
        let mut mu = Coefficient::zero();
        for (i, j, c) in fy.iter_nonzero() {
            match (i, j) {
                (0, 1) => {
                    if !c.is_one() {
                        break 'formal;
                    }
                }
                (ii, 1) if ii == k => mu = c.clone(),
                _ => break 'formal,
            }
        }
        return Some(NamedForm::SnFormalModel { k, mu });
    }

    if fx == &x2 {
        // SnCentral / SnVersal: y + x f(y)
        if let Some(f) = series1_of_x_slope(fy) {
            return Some(if f.constant_term().is_zero() {
                NamedForm::SnCentral { f }
            } else {
                NamedForm::SnVersal { f }
            });
        }
        // SnBrjuno: y + x y f(x^n y): support {(1 + n t, 1 + t)}
        'brjuno: {
            let mut n_inferred: Option<usize> = None;
            let mut terms: Vec<(usize, Coefficient)> = Vec::new();
            for (i, j, c) in fy.iter_nonzero() {
                match (i, j) {
                    (0, 1) => {
                        if !c.is_one() {
                            break 'brjuno;
                        }
                    }
                    (1, 1) => terms.push((0, c.clone())),
                    (i, j) if j >= 2 && i >= 1 => {
                        let t = j - 1;
                        if (i - 1) % t != 0 {
                            break 'brjuno;
                        }
                        let n = (i - 1) / t;
                        if n == 0 {
                            break 'brjuno;
                        }
                        match n_inferred {
                            None => n_inferred = Some(n),
                            Some(m) if m == n => {}
                            _ => break 'brjuno,
                        }
                        terms.push((t, c.clone()));
                    }
                    _ => break 'brjuno,
                }
            }
            let Some(n) = n_inferred else { break 'brjuno };
            let mut f = TruncatedSeries1::zero(order);
            for (t, c) in terms {
                f.set_coeff(t, c);
            }
            return Some(NamedForm::SnBrjuno { f, n });
        }
    }

    // SaddleForm: -x dx + mu (f(y) + x) y dy
    'saddle: {
        if fx != &TruncatedSeries2::var_x(order).scalar_mul(&-&Coefficient::one()) {
            break 'saddle;
        }
        let mu = fy.at(1, 1).clone();
        if mu.is_zero() {
            break 'saddle;
        }
        let mut f = TruncatedSeries1::zero(order);
        for (i, j, c) in fy.iter_nonzero() {
            match (i, j) {
                (1, 1) => {}
                (0, jj) if jj >= 1 => {
                    f.set_coeff(jj - 1, c.checked_div(&mu).ok()?);
                }
                _ => break 'saddle,
            }
        }
        if !f.constant_term().is_one() {
            break 'saddle;
        }
        return Some(NamedForm::SaddleForm { mu, f });
    }

    // PdSaddleNode: x dx + (y^(k+1) + mu y^(2k+1)) dy
    'pdsn: {
        if fx != &TruncatedSeries2::var_x(order) {
            break 'pdsn;
        }
        let b = match fy.iter_nonzero().all(|(i, _, _)| i == 0) {
            true => fy.restrict_x0(),
            false => break 'pdsn,
        };
        let val = b.valuation()?;
        if val < 2 {
            break 'pdsn;
        }
        let k = val - 1;
        if !b.coeff(val).is_one() {
            break 'pdsn;
        }
        let mut mu = Coefficient::zero();
        for idx in 0..=b.order() {
            let c = b.coeff(idx);
            if c.is_zero() || idx == val {
                continue;
            }
            if idx == 2 * k + 1 {
                mu = c.clone();
            } else {
                break 'pdsn;
            }
        }
        return Some(NamedForm::PdSaddleNode { k, mu });
    }

    // Linear shapes.
    let m = x.linear_matrix();
    let only_linear = fx.iter_nonzero().all(|(i, j, _)| i + j == 1)
        && fy.iter_nonzero().all(|(i, j, _)| i + j == 1);
    if only_linear {
        if m[0][1].is_zero() && m[1][0].is_zero() {
            return Some(NamedForm::PdLinear {
                l1: m[0][0].clone(),
                l2: m[1][1].clone(),
            });
        }
        if m[0][0] == m[1][1]
            && m[0][1] == -&m[1][0]
            && m.iter().flatten().all(|c| c.is_real())
            && !m[1][0].is_zero()
            && !m[0][0].is_zero()
        {
            return Some(NamedForm::PdRealFocus {
                a: m[0][0].clone(),
                b: m[1][0].clone(),
            });
        }
        // non-diagonal node, k = 1: lambda (x + y) dx + lambda y dy
        if m[1][0].is_zero() && m[0][0] == m[1][1] && m[0][1] == m[0][0] && !m[0][0].is_zero() {
            return Some(NamedForm::PdNode {
                lambda: m[0][0].clone(),
                k: 1,
            });
        }
        return None;
    }

    // PdNode k >= 2: lambda (k x + y^k) dx + lambda y dy
    'node: {
        let lambda = m[1][1].clone();
        if lambda.is_zero() {
            break 'node;
        }
        if fy != &TruncatedSeries2::var_y(order).scalar_mul(&lambda) {
            break 'node;
        }
        let mut k_term = None;
        for (i, j, c) in fx.iter_nonzero() {
            match (i, j) {
                (1, 0) => {}
                (0, k) if k >= 2 => {
                    if c != &lambda || k_term.is_some() {
                        break 'node;
                    }
                    k_term = Some(k);
                }
                _ => break 'node,
            }
        }
        let Some(k) = k_term else { break 'node };
        if m[0][0] != &lambda * &Coefficient::from_int(k as i64) {
            break 'node;
        }
        return Some(NamedForm::PdNode { lambda, k });
    }

    // PdResonantSaddle: q x dx - (p + u^k + mu u^(2k)) y dy
    'rsaddle: {
        let q_c = m[0][0].clone();
        let p_c = -&m[1][1];
        let (Some(q), Some(p)) = (q_c.as_usize(), p_c.as_usize()) else {
            break 'rsaddle;
        };
        if p == 0 || q == 0 {
            break 'rsaddle;
        }
        if fx != &TruncatedSeries2::var_x(order).scalar_mul(&q_c) {
            break 'rsaddle;
        }
        let mut k_found = None;
        let mut mu = Coefficient::zero();
        for (i, j, c) in fy.iter_nonzero() {
            if (i, j) == (0, 1) {
                continue;
            }
            // expect -(u^k y) and -(mu u^(2k) y)
            if j < 1 || i % p != 0 || (j - 1) % q != 0 || i / p != (j - 1) / q {
                break 'rsaddle;
            }
            let t = i / p;
            match k_found {
                None => {
                    if !(-c).is_one() {
                        break 'rsaddle;
                    }
                    k_found = Some(t);
                }
                Some(k) => {
                    if t == 2 * k {
                        mu = -c;
                    } else {
                        break 'rsaddle;
                    }
                }
            }
        }
        let Some(k) = k_found else { break 'rsaddle };
        return Some(NamedForm::PdResonantSaddle {
            p: p as u64,
            q: q as u64,
            k,
            mu,
        });
    }

    None
}

/// When B is the pullback of A under the homothety (x, y) -> (x, c y)
/// (same variant), return c; otherwise `None`.
///
/// The measured actions, verified by exact pullback, are
/// f_B(y) = f_A(c y) / c for the versal/central forms (coefficientwise
/// f_B,j = c^(j-1) f_A,j, so the mu slot is preserved) and f_B(y) = f_A(c y)
/// for the saddle and staircase forms; parameter-rigid models match only
/// trivially.
pub fn homothety_orbit_equal(a: &NamedForm, b: &NamedForm) -> Option<Coefficient> {
    fn match_scaled(
        fa: &TruncatedSeries1,
        fb: &TruncatedSeries1,
        exp_of: impl Fn(usize) -> i64,
    ) -> Option<Coefficient> {
        let n = fa.order().min(fb.order());
        // support must agree
        for j in 0..=n {
            if fa.coeff(j).is_zero() != fb.coeff(j).is_zero() {
                return None;
            }
        }
        // candidates from the first index with a nontrivial exponent
        let mut candidates = Vec::new();
        for j in 0..=n {
            let e = exp_of(j);
            if e == 0 || fa.coeff(j).is_zero() {
                continue;
            }
            let ratio = fb.coeff(j).checked_div(fa.coeff(j)).ok()?;
            // c^e = ratio
            let (root_arg, exp_abs) = if e > 0 {
                (ratio.clone(), e as u32)
            } else {
                (ratio.inv().ok()?, (-e) as u32)
            };
            if exp_abs == 1 {
                candidates.push(root_arg);
            } else if let Some(r) = root_arg.nth_root_exact(exp_abs) {
                candidates.push(r.clone());
                if exp_abs % 2 == 0 {
                    candidates.push(-&r);
                }
            }
            break;
        }
        if candidates.is_empty() {
            // all scalable coefficients vanish: any c works, report 1
            return Some(Coefficient::one());
        }
        'cand: for c in candidates {
            if c.is_zero() {
                continue;
            }
            for j in 0..=n {
                let e = exp_of(j);
                let scaled = if e >= 0 {
                    fa.coeff(j) * &c.pow_u(e as usize)
                } else {
                    fa.coeff(j)
                        .checked_div(&c.pow_u((-e) as usize))
                        .ok()?
                };
                if &scaled != fb.coeff(j) {
                    continue 'cand;
                }
            }
            return Some(c);
        }
        None
    }

    match (a, b) {
        (NamedForm::SnVersal { f: fa }, NamedForm::SnVersal { f: fb })
        | (NamedForm::SnCentral { f: fa }, NamedForm::SnCentral { f: fb }) => {
            // f_B,j = c^(j-1) f_A,j
            match_scaled(fa, fb, |j| j as i64 - 1)
        }
        (
            NamedForm::SaddleForm { mu: ma, f: fa },
            NamedForm::SaddleForm { mu: mb, f: fb },
        ) => {
            if ma != mb {
                return None;
            }
            match_scaled(fa, fb, |j| j as i64)
        }
        (NamedForm::SnBrjuno { f: fa, n: na }, NamedForm::SnBrjuno { f: fb, n: nb }) => {
            if na != nb {
                return None;
            }
            match_scaled(fa, fb, |j| j as i64)
        }
        _ => {
            if a == b {
                Some(Coefficient::one())
            } else {
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vfield::pullback;

    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    #[test]
    fn formal_model_equals_versal_with_linear_f() {
        let n = 8;
        let mu = Coefficient::from_ratio(4, 7);
        let a = make_named(
            &NamedForm::SnVersal {
                f: TruncatedSeries1::monomial(n, 1, mu.clone()),
            },
            n,
        )
        .unwrap();
        let b = make_named(&NamedForm::SnFormalModel { k: 1, mu }, n).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn recognize_staircase_form() {
        let n = 12;
        let mu = Coefficient::from_ratio(-1, 2);
        let mut f = TruncatedSeries1::zero(n);
        f.set_coeff(0, mu.clone());
        f.set_coeff(1, c(3));
        let form = NamedForm::SnBrjuno { f: f.clone(), n: 2 };
        let field = make_named(&form, n).unwrap();
        assert_eq!(recognize(&field), Some(form));
    }

    #[test]
    fn recognize_rejects_nonsingular() {
        let n = 4;
        let field = PlanarVectorField::new(
            TruncatedSeries2::one(n),
            TruncatedSeries2::zero(n),
        )
        .unwrap();
        assert_eq!(recognize(&field), None);
    }

    #[test]
    fn recognize_central_and_versal() {
        let n = 8;
        let f0 = TruncatedSeries1::monomial(n, 1, c(2));
        let central = make_named(&NamedForm::SnCentral { f: f0.clone() }, n).unwrap();
        // f = 2y: this is also the formal model k=1, mu=2, which wins priority
        assert_eq!(
            recognize(&central),
            Some(NamedForm::SnFormalModel { k: 1, mu: c(2) })
        );
        let mut f = f0;
        f.set_coeff(2, c(5));
        let central = make_named(&NamedForm::SnCentral { f: f.clone() }, n).unwrap();
        assert_eq!(recognize(&central), Some(NamedForm::SnCentral { f }));
    }

    #[test]
    fn homothety_action_matches_pullback() {
        // Pulling the versal field back along (x, c y) realizes
        // f_B(y) = f_A(c y) / c; the recovered c must reproduce B exactly.
        let n = 10;
        let mut f = TruncatedSeries1::zero(n);
        f.set_coeff(1, c(1));
        f.set_coeff(2, c(1));
        let a = NamedForm::SnVersal { f: f.clone() };
        let fa = make_named(&a, n).unwrap();
        let ch = c(2);
        let phi = CoordinateChange::new(
            TruncatedSeries2::var_x(n),
            TruncatedSeries2::var_y(n).scalar_mul(&ch),
        )
        .unwrap();
        let fb = pullback(&fa, &phi).unwrap();
        let b = recognize(&fb).unwrap();
        let got = homothety_orbit_equal(&a, &b).unwrap();
        assert_eq!(got, ch);
        let phi2 = CoordinateChange::new(
            TruncatedSeries2::var_x(n),
            TruncatedSeries2::var_y(n).scalar_mul(&got),
        )
        .unwrap();
        assert_eq!(pullback(&fa, &phi2).unwrap(), fb);
    }

    #[test]
    fn homothety_identity_and_mismatch() {
        let n = 8;
        let mut f = TruncatedSeries1::zero(n);
        f.set_coeff(1, c(1));
        let a = NamedForm::SnVersal { f: f.clone() };
        assert_eq!(homothety_orbit_equal(&a, &a), Some(Coefficient::one()));
        let mut g = TruncatedSeries1::zero(n);
        g.set_coeff(1, c(1));
        g.set_coeff(3, c(1));
        let b = NamedForm::SnVersal { f: g };
        assert_eq!(homothety_orbit_equal(&a, &b), None);
    }
}
