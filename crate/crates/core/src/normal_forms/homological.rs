//! Degree-by-degree elimination against the linear part.
//!
//! For each total degree d the Lie bracket ad_{X1} acts on the 2(d+1)
//! dimensional space of homogeneous vector fields. We solve
//! ad(P) = R - rho with rho constrained to a prescribed set of "kept"
//! monomials, preferring the range of ad (kept slots are used only for the
//! cokernel) and setting free kernel coordinates to zero. Everything is
//! exact over Q(i).

use crate::coeff::Coefficient;
use crate::error::{CoreError, Result};
use crate::series::{TruncatedSeries2, Var};
use crate::vfield::{pullback, CoordinateChange, PlanarVectorField};

/// Which homogeneous monomials a reduction is allowed to keep.
pub(crate) type KeepFn<'a> = &'a dyn Fn(usize, usize, Var) -> bool;

/// Basis layout for degree d: index j in 0..=d is x^(d-j) y^j d/dx,
/// index (d+1)+j is x^(d-j) y^j d/dy.
fn basis_dim(d: usize) -> usize {
    2 * (d + 1)
}

/// ad_{X1}(basis vector) in basis coordinates, for X1 with matrix
/// [[a, b], [c, d]].
fn ad_column(m: &[[Coefficient; 2]; 2], deg: usize, idx: usize) -> Vec<Coefficient> {
    let (comp, j) = if idx <= deg {
        (Var::X, idx)
    } else {
        (Var::Y, idx - deg - 1)
    };
    let i = deg - j;
    let (a, b, c, d) = (&m[0][0], &m[0][1], &m[1][0], &m[1][1]);
    let mut col = vec![Coefficient::zero(); basis_dim(deg)];

    // X1(x^i y^j) = (a i + d j) x^i y^j + (i b) x^(i-1) y^(j+1)
    //             + (j c) x^(i+1) y^(j-1)
    let mut add_x1_g = |target: Var| {
        let base = match target {
            Var::X => 0,
            Var::Y => deg + 1,
        };
        let diag = &(a * &Coefficient::from_int(i as i64))
            + &(d * &Coefficient::from_int(j as i64));
        col[base + j] += &diag;
        if i >= 1 {
            let v = b * &Coefficient::from_int(i as i64);
            col[base + j + 1] += &v;
        }
        if j >= 1 {
            let v = c * &Coefficient::from_int(j as i64);
            col[base + j - 1] += &v;
        }
    };

    match comp {
        Var::X => {
            // [X1, g dx] = X1(g) dx - g (a dx + c dy)
            add_x1_g(Var::X);
            col[j] -= a;
            col[deg + 1 + j] -= c;
        }
        Var::Y => {
            // [X1, g dy] = X1(g) dy - g (b dx + d dy)
            add_x1_g(Var::Y);
            col[j] -= b;
            col[deg + 1 + j] -= d;
        }
    }
    col
}

/// Gaussian elimination over Q(i) for [A | S] [p; rho] = r where S holds
/// indicator columns for the kept slots. A-columns are pivoted first, so the
/// kept slots absorb only what the range of ad cannot.
fn solve_with_complement(
    a_cols: &[Vec<Coefficient>],
    kept_rows: &[usize],
    rhs: &[Coefficient],
) -> Option<(Vec<Coefficient>, Vec<Coefficient>)> {
    let m = rhs.len();
    let n_a = a_cols.len();
    let n = n_a + kept_rows.len();
    let mut mat: Vec<Vec<Coefficient>> = (0..m)
        .map(|i| {
            let mut row: Vec<Coefficient> = Vec::with_capacity(n + 1);
            for col in a_cols {
                row.push(col[i].clone());
            }
            for &k in kept_rows {
                row.push(if k == i {
                    Coefficient::one()
                } else {
                    Coefficient::zero()
                });
            }
            row.push(rhs[i].clone());
            row
        })
        .collect();

    let mut pivot_of_col = vec![None; n];
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..m).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pr);
        let inv = mat[rank][col].inv().expect("pivot nonzero");
        for v in mat[rank].iter_mut().skip(col) {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        for i in 0..m {
            if i != rank && !mat[i][col].is_zero() {
                let factor = mat[i][col].clone();
                for cidx in col..=n {
                    let delta = &factor * &mat[rank][cidx];
                    mat[i][cidx] -= &delta;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
        if rank == m {
            break;
        }
    }
    // consistency: zero rows must have zero rhs
    for row in mat.iter().skip(rank) {
        if !row[n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Coefficient::zero(); n];
    for (col, pr) in pivot_of_col.iter().enumerate() {
        if let Some(pr) = pr {
            x[col] = mat[*pr][n].clone();
        }
    }
    let rho = x.split_off(n_a);
    Some((x, rho))
}

fn degree_vector(x: &PlanarVectorField, d: usize) -> Vec<Coefficient> {
    let mut v = vec![Coefficient::zero(); basis_dim(d)];
    for j in 0..=d {
        v[j] = x.fx().at(d - j, j).clone();
        v[d + 1 + j] = x.fy().at(d - j, j).clone();
    }
    v
}

fn vector_to_components(
    v: &[Coefficient],
    d: usize,
    order: usize,
) -> (TruncatedSeries2, TruncatedSeries2) {
    let mut px = TruncatedSeries2::zero(order);
    let mut py = TruncatedSeries2::zero(order);
    for j in 0..=d {
        if !v[j].is_zero() {
            px.set(d - j, j, v[j].clone());
        }
        if !v[d + 1 + j].is_zero() {
            py.set(d - j, j, v[d + 1 + j].clone());
        }
    }
    (px, py)
}

/// Remove, degree by degree, every monomial the keep predicate rejects,
/// conjugating by tangent-to-identity changes. Returns the reduced field and
/// the cumulative change C with reduced = pullback(input, C).
///
/// Underdetermined steps (kernel directions of ad) leave the free
/// coefficients at zero, which makes the output canonical.
pub(crate) fn eliminate_nonresonant(
    x: &PlanarVectorField,
    keep: KeepFn<'_>,
) -> Result<(PlanarVectorField, CoordinateChange)> {
    let order = x.order();
    let m = x.linear_matrix();
    let mut current = x.clone();
    let mut change = CoordinateChange::identity(order);

    for d in 2..=order {
        let rhs = degree_vector(&current, d);
        if rhs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let a_cols: Vec<Vec<Coefficient>> =
            (0..basis_dim(d)).map(|idx| ad_column(&m, d, idx)).collect();
        let kept_rows: Vec<usize> = (0..basis_dim(d))
            .filter(|&idx| {
                let (comp, j) = if idx <= d {
                    (Var::X, idx)
                } else {
                    (Var::Y, idx - d - 1)
                };
                keep(d - j, j, comp)
            })
            .collect();
        let (p, _rho) = solve_with_complement(&a_cols, &kept_rows, &rhs).ok_or_else(|| {
            CoreError::UnsupportedClass(format!(
                "homological equation unsolvable at degree {d} with the prescribed kept set"
            ))
        })?;
        if p.iter().all(|c| c.is_zero()) {
            continue;
        }
        let (px, py) = vector_to_components(&p, d, order);
        let phi = CoordinateChange::new(
            &TruncatedSeries2::var_x(order) + &px,
            &TruncatedSeries2::var_y(order) + &py,
        )?;
        current = pullback(&current, &phi)?;
        change = change.compose(&phi)?;
    }

    Ok((current, change))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    #[test]
    fn diagonal_ad_matches_classic_divisors() {
        // X1 = 2x dx + 3y dy: ad on x^i y^j dx has eigenvalue 2i + 3j - 2,
        // on x^i y^j dy eigenvalue 2i + 3j - 3.
        let m = [
            [c(2), Coefficient::zero()],
            [Coefficient::zero(), c(3)],
        ];
        let d = 3;
        for idx in 0..basis_dim(d) {
            let col = ad_column(&m, d, idx);
            let (j, expect) = if idx <= d {
                (idx, 2 * (d - idx) as i64 + 3 * idx as i64 - 2)
            } else {
                (idx - d - 1, 2 * (d - (idx - d - 1)) as i64 + 3 * (idx - d - 1) as i64 - 3)
            };
            let _ = j;
            for (i, v) in col.iter().enumerate() {
                if i == idx {
                    assert_eq!(v, &c(expect));
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn elimination_linearizes_nonresonant_field() {
        // x dx + (5/2) y dy + junk: no resonances up to this order.
        let n = 8;
        let lam = Coefficient::from_ratio(5, 2);
        let mut fx = TruncatedSeries2::var_x(n);
        fx.set(2, 0, c(3));
        fx.set(1, 1, c(-1));
        let mut fy = TruncatedSeries2::var_y(n).scalar_mul(&lam);
        fy.set(0, 2, c(2));
        fy.set(2, 1, Coefficient::from_ratio(1, 2));
        let x = PlanarVectorField::new(fx, fy).unwrap();
        let (reduced, change) = eliminate_nonresonant(&x, &|_, _, _| false).unwrap();
        let want = PlanarVectorField::new(
            TruncatedSeries2::var_x(n),
            TruncatedSeries2::var_y(n).scalar_mul(&lam),
        )
        .unwrap();
        assert_eq!(reduced, want);
        // reassembly: pullback(input, change) = reduced
        assert_eq!(pullback(&x, &change).unwrap(), reduced);
        assert!(change.is_tangent_to_identity());
    }

    #[test]
    fn kept_slots_absorb_resonant_terms() {
        // saddle-node linear part y dy: x^i dx and x^i y dy are resonant.
        let n = 6;
        let mut fx = TruncatedSeries2::zero(n);
        fx.set(2, 0, c(1)); // x^2 dx, resonant
        fx.set(1, 1, c(4)); // x y dx, removable
        let mut fy = TruncatedSeries2::var_y(n);
        fy.set(0, 2, c(-3)); // y^2 dy, removable
        fy.set(1, 1, c(7)); // x y dy, resonant
        let x = PlanarVectorField::new(fx, fy).unwrap();
        let keep = |i: usize, j: usize, comp: Var| match comp {
            Var::X => j == 0 && i >= 2,
            Var::Y => j == 1 && i >= 1,
        };
        let (reduced, change) = eliminate_nonresonant(&x, &keep).unwrap();
        assert_eq!(reduced.fx().at(1, 1), &Coefficient::zero());
        assert_eq!(reduced.fy().at(0, 2), &Coefficient::zero());
        assert_eq!(reduced.fx().at(2, 0), &c(1));
        assert_eq!(reduced.fy().at(1, 1), &c(7));
        assert_eq!(pullback(&x, &change).unwrap(), reduced);
    }
}
