//! Linear-part eigendata, the singularity taxonomy of the two
//! Poincaré–Dulac theorems, and small-divisor arithmetic.

pub mod brjuno;

use num_bigint::BigInt;
use num_complex::Complex64;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use brjuno::{brjuno_report, BrjunoBudget, BrjunoReport, BrjunoTarget, BrjunoVerdict};

use crate::coeff::{Coefficient, Scalar};
use crate::error::Result;
use crate::vfield::PlanarVectorField;

/// Eigenvalues and eigenratio of the linear part, exact whenever the
/// characteristic discriminant admits an exact square root.
///
/// Ordering convention: eigenvalues are sorted by decreasing (re, im); when
/// exactly one eigenvalue vanishes it is always `lambda2`, so the eigenratio
/// lambda = lambda2 / lambda1 is defined for saddle-nodes.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub matrix: [[Coefficient; 2]; 2],
    pub lambda1: Scalar,
    pub lambda2: Scalar,
    pub eigenratio: Option<Scalar>,
    pub exact: bool,
}

fn cmp_rat_pair(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> std::cmp::Ordering {
    a.0.cmp(&b.0).then(a.1.cmp(&b.1))
}

pub fn eigen_data(x: &PlanarVectorField) -> EigenData {
    let m = x.linear_matrix();
    let trace = &m[0][0] + &m[1][1];
    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    let disc = &(&trace * &trace) - &(&det * &Coefficient::from_int(4));

    let half = Coefficient::from_ratio(1, 2);

    if let Some(root) = disc.sqrt_exact() {
        let l_plus = &(&trace + &root) * &half;
        let l_minus = &(&trace - &root) * &half;
        // order by decreasing (re, im), zero always second
        let key = |c: &Coefficient| (c.re().clone(), c.im().clone());
        let (mut l1, mut l2) = if cmp_rat_pair(&key(&l_plus), &key(&l_minus)).is_ge() {
            (l_plus, l_minus)
        } else {
            (l_minus, l_plus)
        };
        if l1.is_zero() && !l2.is_zero() {
            std::mem::swap(&mut l1, &mut l2);
        }
        let ratio = if l1.is_zero() {
            None
        } else {
            Some(Scalar::Exact(l2.checked_div(&l1).expect("l1 nonzero")))
        };
        return EigenData {
            matrix: m,
            lambda1: Scalar::Exact(l1),
            lambda2: Scalar::Exact(l2),
            eigenratio: ratio,
            exact: true,
        };
    }

    // Real trace and real positive discriminant: exact real surd branch.
    if trace.is_real() && disc.is_real() && disc.re().is_positive() {
        if let Some((d_core, scale)) = square_free_split(disc.re()) {
            // sqrt(disc) = scale * sqrt(d_core)
            let t = trace.re().clone();
            let two = BigRational::from_integer(BigInt::from(2));
            let b = &scale / &two;
            let a = &t / &two;
            // lambda1 = a + b sqrt(d) (the larger), lambda2 = a - b sqrt(d)
            let l1 = Scalar::Surd {
                a: a.clone(),
                b: b.clone(),
                d: d_core.clone(),
            };
            let l2 = Scalar::Surd {
                a: a.clone(),
                b: -&b,
                d: d_core.clone(),
            };
            // ratio = (t - sqrt(D)) / (t + sqrt(D)) = (t^2 + D - 2 t sqrt(D)) / (4 det)
            // where D = disc. Exact surd, provided det != 0.
            let ratio = if det.is_zero() {
                None
            } else {
                let disc_r = disc.re().clone();
                let denom = det.re().clone() * BigRational::from_integer(BigInt::from(4));
                let ra = (&t * &t + &disc_r) / &denom;
                let rb = (-&t * &scale) / &denom;
                Some(if rb.is_zero() {
                    Scalar::Exact(Coefficient::from_rational(ra))
                } else {
                    Scalar::Surd {
                        a: ra,
                        b: rb,
                        d: d_core,
                    }
                })
            };
            return EigenData {
                matrix: m,
                lambda1: l1,
                lambda2: l2,
                eigenratio: ratio,
                exact: true,
            };
        }
    }

    // Approximate fallback.
    let tr = trace.to_complex64();
    let dc = disc.to_complex64();
    let root = dc.sqrt();
    let mut l1 = (tr + root) * 0.5;
    let mut l2 = (tr - root) * 0.5;
    if (l1.re, l1.im) < (l2.re, l2.im) {
        std::mem::swap(&mut l1, &mut l2);
    }
    if l1.norm() < 1e-14 && l2.norm() >= 1e-14 {
        std::mem::swap(&mut l1, &mut l2);
    }
    let ratio = if l1.norm() < 1e-14 {
        None
    } else {
        Some(Scalar::Approx(l2 / l1))
    };
    EigenData {
        matrix: m,
        lambda1: Scalar::Approx(l1),
        lambda2: Scalar::Approx(l2),
        eigenratio: ratio,
        exact: false,
    }
}

/// Split a positive rational r as scale^2 * d with d a square-free-ish
/// positive non-square integer (d collects what is left under the root).
/// Returns None when r is a perfect square (caller handles that earlier).
fn square_free_split(r: &BigRational) -> Option<(BigInt, BigRational)> {
    // r = p/q = (p q) / q^2, so sqrt(r) = sqrt(p q) / q.
    let pq = r.numer() * r.denom();
    if !pq.is_positive() {
        return None;
    }
    let s = pq.sqrt();
    if &s * &s == pq {
        return None;
    }
    // Extract the largest square factor of pq by trial division up to a
    // modest bound; what remains stays under the root.
    let mut core = pq.clone();
    let mut square = BigInt::one();
    let mut f = BigInt::from(2);
    let bound = BigInt::from(100_000);
    while &f * &f <= core && f <= bound {
        let f2 = &f * &f;
        while (&core % &f2).is_zero() {
            core /= &f2;
            square *= &f;
        }
        f += 1;
    }
    let scale = BigRational::new(square, r.denom().clone());
    Some((core, scale))
}

/// Taxonomy of an isolated singular point, as partitioned by the two
/// Poincaré–Dulac theorems.
#[derive(Clone, Debug, PartialEq)]
pub enum SingularityClass {
    NonSingular,
    /// Eigenratio outside R^- and no integer resonance.
    PoincareNonResonant,
    /// {lambda1, lambda2} = {lambda, k lambda}, k >= 1.
    ResonantNode { k: usize },
    /// Real field with eigenvalues a +/- i b, a, b real nonzero.
    RealFocus { a: Scalar, b: Scalar },
    /// Negative irrational eigenratio, with a budgeted arithmetic verdict.
    IrrationalSaddle { verdict: BrjunoVerdict },
    /// Eigenratio -p/q in lowest terms.
    ResonantSaddle { p: u64, q: u64 },
    /// Exactly one zero eigenvalue.
    SaddleNode,
    /// Nilpotent nonzero linear part.
    Nilpotent,
    ZeroLinearPart,
}

impl SingularityClass {
    /// Discriminant plus scale-invariant payload, for foliation-level
    /// comparisons (RealFocus carries eigenvalue data that units rescale).
    pub fn signature(&self) -> String {
        match self {
            SingularityClass::RealFocus { .. } => "RealFocus".to_string(),
            other => format!("{other:?}"),
        }
    }
}

fn is_real_field(x: &PlanarVectorField) -> bool {
    x.fx().iter_nonzero().all(|(_, _, c)| c.is_real())
        && x.fy().iter_nonzero().all(|(_, _, c)| c.is_real())
}

/// Classify the singular point at the origin.
pub fn classify(x: &PlanarVectorField, budget: &BrjunoBudget) -> SingularityClass {
    if !x.is_singular_at_origin() {
        return SingularityClass::NonSingular;
    }
    let m = x.linear_matrix();
    let zero_linear = m.iter().flatten().all(|c| c.is_zero());
    if zero_linear {
        return SingularityClass::ZeroLinearPart;
    }
    let eig = eigen_data(x);
    let trace = &m[0][0] + &m[1][1];
    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);

    if det.is_zero() {
        // one eigenvalue is zero; both zero means nilpotent
        return if trace.is_zero() {
            SingularityClass::Nilpotent
        } else {
            SingularityClass::SaddleNode
        };
    }

    match eig.eigenratio.as_ref() {
        Some(Scalar::Exact(ratio)) => {
            if let Some(r) = ratio.as_rational() {
                if r.is_negative() {
                    let p = r.numer().abs().to_u64().unwrap_or(u64::MAX);
                    let q = r.denom().to_u64().unwrap_or(u64::MAX);
                    return SingularityClass::ResonantSaddle { p, q };
                }
                // ratio k or 1/k with k a positive integer => resonant node
                if r.is_integer() && r.is_positive() {
                    return SingularityClass::ResonantNode {
                        k: r.to_integer().to_usize().unwrap_or(usize::MAX),
                    };
                }
                if r.recip().is_integer() && r.is_positive() {
                    return SingularityClass::ResonantNode {
                        k: r.recip().to_integer().to_usize().unwrap_or(usize::MAX),
                    };
                }
            }
            // complex exact ratio: check for a real focus on real fields
            if !ratio.is_real() && is_real_field(x) {
                if let (Scalar::Exact(l1), _) = (&eig.lambda1, &eig.lambda2) {
                    if !l1.re().is_zero() && !l1.im().is_zero() {
                        return SingularityClass::RealFocus {
                            a: Scalar::Exact(Coefficient::from_rational(l1.re().clone())),
                            b: Scalar::Exact(Coefficient::from_rational(l1.im().abs())),
                        };
                    }
                }
            }
            SingularityClass::PoincareNonResonant
        }
        Some(Scalar::Surd { a, b, d }) => {
            // real irrational ratio, exact
            if surd_is_negative(a, b, d) {
                let target = BrjunoTarget::Surd {
                    a: a.numer() * b.denom(),
                    b: b.numer() * a.denom(),
                    d: d.clone(),
                    q: a.denom() * b.denom(),
                };
                let verdict = brjuno_report(&target, budget)
                    .map(|r| r.verdict)
                    .unwrap_or(BrjunoVerdict::Inconclusive);
                SingularityClass::IrrationalSaddle { verdict }
            } else {
                SingularityClass::PoincareNonResonant
            }
        }
        Some(Scalar::Approx(z)) => {
            // Approximate eigendata: only a coarse verdict is honest here.
            if z.im.abs() < 1e-12 && z.re < 0.0 {
                SingularityClass::IrrationalSaddle {
                    verdict: BrjunoVerdict::Inconclusive,
                }
            } else if is_real_field(x) && z.im.abs() > 1e-12 {
                let l1 = eig.lambda1.to_complex64();
                SingularityClass::RealFocus {
                    a: Scalar::Approx(Complex64::new(l1.re, 0.0)),
                    b: Scalar::Approx(Complex64::new(l1.im.abs(), 0.0)),
                }
            } else {
                SingularityClass::PoincareNonResonant
            }
        }
        None => SingularityClass::SaddleNode,
    }
}

/// Sign of a + b sqrt(d), exactly.
fn surd_is_negative(a: &BigRational, b: &BigRational, d: &BigInt) -> bool {
    let d_rat = BigRational::from_integer(d.clone());
    if !a.is_negative() && !b.is_negative() {
        return false;
    }
    if a.is_negative() && !b.is_positive() {
        return true;
    }
    // mixed signs: compare a^2 with b^2 d
    let a2 = a * a;
    let b2d = b * b * d_rat;
    if a.is_negative() {
        // negative iff a^2 > b^2 d
        a2 > b2d
    } else {
        // a >= 0, b < 0: negative iff b^2 d > a^2
        b2d > a2
    }
}

/// The staircase exponent set paired with a slope: for each n > 0 the unique
/// integer m in [n/s + 1, n/s + 2).
#[derive(Clone, Debug, PartialEq)]
pub enum Slope {
    Finite(BigRational),
    Infinite,
}

/// All (m, n) in the slope-s exponent staircase with m + mu n a nonpositive
/// integer, exploring m, n up to `max_index`. An empty result certifies
/// applicability of the announced form up to the bound.
pub fn es_resonance_check(
    s: &Slope,
    mu: &Coefficient,
    max_index: usize,
) -> Result<Vec<(usize, usize)>> {
    if let Slope::Finite(v) = s {
        if !v.is_positive() {
            return Err(crate::error::CoreError::ConstraintViolated(
                "slope must be positive".into(),
            ));
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_index {
        let m = match s {
            Slope::Infinite => 1usize,
            Slope::Finite(v) => {
                // unique integer in [n/s + 1, n/s + 2) is floor(n/s) + 1
                let ns = BigRational::from_integer(BigInt::from(n)) / v;
                match (ns.floor().to_integer() + BigInt::one()).to_usize() {
                    Some(m) => m,
                    None => continue,
                }
            }
        };
        if m > max_index {
            continue;
        }
        // m + mu n in -N requires mu real and m + mu n a nonpositive integer
        let shifted = &Coefficient::from_int(m as i64)
            + &(mu * &Coefficient::from_int(n as i64));
        if let Some(r) = shifted.as_rational() {
            if r.is_integer() && !r.is_positive() {
                out.push((m, n));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries2;

    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    fn from_matrix(order: usize, m: [[i64; 2]; 2]) -> PlanarVectorField {
        let x = TruncatedSeries2::var_x(order);
        let y = TruncatedSeries2::var_y(order);
        PlanarVectorField::new(
            &x.scalar_mul(&c(m[0][0])) + &y.scalar_mul(&c(m[0][1])),
            &x.scalar_mul(&c(m[1][0])) + &y.scalar_mul(&c(m[1][1])),
        )
        .unwrap()
    }

    #[test]
    fn saddle_node_eigendata() {
        // x^2 dx + y dy + mu x y dy: linear part ((0,0),(0,1))
        let n = 6;
        let mu = Coefficient::from_ratio(1, 3);
        let fy = &TruncatedSeries2::var_y(n)
            + &TruncatedSeries2::monomial(n, 1, 1, mu);
        let x = PlanarVectorField::new(TruncatedSeries2::monomial(n, 2, 0, c(1)), fy).unwrap();
        let eig = eigen_data(&x);
        assert_eq!(eig.lambda1, Scalar::Exact(c(1)));
        assert_eq!(eig.lambda2, Scalar::Exact(Coefficient::zero()));
        assert!(eig.eigenratio.is_some());
        assert_eq!(classify(&x, &BrjunoBudget::default()), SingularityClass::SaddleNode);
    }

    #[test]
    fn lower_triangular_matrix_eigenvalues() {
        // ((0,0),(c,1)) has eigenvalues {0, 1}
        let x = from_matrix(4, [[0, 0], [5, 1]]);
        let eig = eigen_data(&x);
        assert_eq!(eig.lambda1, Scalar::Exact(c(1)));
        assert_eq!(eig.lambda2, Scalar::Exact(Coefficient::zero()));
    }

    #[test]
    fn focus_matrix_eigenvalues() {
        // ((a,-b),(b,a)) -> a +/- i b
        let x = from_matrix(4, [[2, -3], [3, 2]]);
        let eig = eigen_data(&x);
        assert!(eig.exact);
        assert_eq!(
            eig.lambda1,
            Scalar::Exact(Coefficient::gaussian(2, 1, 3, 1))
        );
        assert_eq!(
            eig.lambda2,
            Scalar::Exact(Coefficient::gaussian(2, 1, -3, 1))
        );
        assert!(matches!(
            classify(&x, &BrjunoBudget::default()),
            SingularityClass::RealFocus { .. }
        ));
    }

    #[test]
    fn node_and_saddle_classes() {
        // ratio 2 -> resonant node k=2
        let node = from_matrix(4, [[1, 0], [0, 2]]);
        assert_eq!(
            classify(&node, &BrjunoBudget::default()),
            SingularityClass::ResonantNode { k: 2 }
        );
        // ratio -3/2 -> resonant saddle (3, 2)
        let saddle = from_matrix(4, [[2, 0], [0, -3]]);
        assert_eq!(
            classify(&saddle, &BrjunoBudget::default()),
            SingularityClass::ResonantSaddle { p: 3, q: 2 }
        );
        // one zero eigenvalue
        let sn = from_matrix(4, [[1, 0], [0, 0]]);
        assert_eq!(classify(&sn, &BrjunoBudget::default()), SingularityClass::SaddleNode);
        // nilpotent
        let nil = from_matrix(4, [[0, 1], [0, 0]]);
        assert_eq!(classify(&nil, &BrjunoBudget::default()), SingularityClass::Nilpotent);
    }

    #[test]
    fn irrational_saddle_gets_surd_ratio_and_verdict() {
        // ((0,1),(1,3)): eigenvalues (3 +/- sqrt(13))/2, ratio irrational < 0
        let x = from_matrix(8, [[0, 1], [1, 3]]);
        let eig = eigen_data(&x);
        assert!(eig.exact);
        assert!(matches!(eig.eigenratio, Some(Scalar::Surd { .. })));
        let class = classify(&x, &BrjunoBudget::default());
        assert!(matches!(
            class,
            SingularityClass::IrrationalSaddle {
                verdict: BrjunoVerdict::ConvergedWithinBudget
            }
        ));
    }

    #[test]
    fn es_staircase_examples() {
        // mu = 1, s = infinity: no resonances
        assert!(es_resonance_check(&Slope::Infinite, &c(1), 40)
            .unwrap()
            .is_empty());
        // mu = -2, s = infinity: (1, 1) resonates (1 - 2 = -1)
        let hits = es_resonance_check(&Slope::Infinite, &c(-2), 40).unwrap();
        assert!(hits.contains(&(1, 1)));
        // positive real part: empty for any slope
        let mu = Coefficient::gaussian(1, 2, -7, 3);
        assert!(es_resonance_check(
            &Slope::Finite(BigRational::new(BigInt::from(3), BigInt::from(2))),
            &mu,
            40
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn es_finite_slope_staircase_shape() {
        // s = 1: E_s = {(m, n): m = n + 1}; resonance m + mu n <= 0 integer
        let hits = es_resonance_check(
            &Slope::Finite(BigRational::one()),
            &Coefficient::from_int(-2),
            30,
        )
        .unwrap();
        // m = n + 1, m - 2n = 1 - n <= 0 for n >= 1: all hit
        assert!(hits.contains(&(2, 1)));
        assert!(hits.contains(&(3, 2)));
        for (m, n) in hits {
            assert_eq!(m, n + 1);
        }
    }
}
