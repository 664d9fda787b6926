//! Continued fractions and budgeted Brjuno verdicts.
//!
//! The Brjuno condition sum(log q_{n+1} / q_n) < infinity is a limit
//! statement, undecidable from finitely many terms; verdicts here are
//! explicitly budgeted. Targets are given symbolically (quadratic surd) or as
//! a declared truncation (exact rational stand-in / partial-quotient stream);
//! continued fractions of floats are meaningless past machine precision and
//! are not accepted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{CoreError, Result};

/// How the real target of a continued-fraction expansion is specified.
#[derive(Clone, Debug, PartialEq)]
pub enum BrjunoTarget {
    /// Exact rational: rejected (rational numbers are resonant, not
    /// small-divisor cases).
    Rational(BigRational),
    /// (a + b sqrt(d)) / q with d > 0 a non-square integer and b != 0.
    Surd {
        a: BigInt,
        b: BigInt,
        d: BigInt,
        q: BigInt,
    },
    /// High-precision rational truncation standing in for an irrational
    /// target (e.g. a truncated digit expansion). The expansion terminates
    /// where the truncation runs out of information.
    Truncation(BigRational),
    /// Partial quotients [a0; a1, a2, ...] given directly.
    Quotients(Vec<BigInt>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BrjunoBudget {
    pub max_terms: usize,
    pub divergence_threshold: f64,
    /// An increment below this, after `min_terms`, counts as budget-level
    /// convergence.
    pub convergence_epsilon: f64,
    pub min_terms: usize,
}

impl Default for BrjunoBudget {
    fn default() -> Self {
        BrjunoBudget {
            max_terms: 200,
            divergence_threshold: 1e3,
            convergence_epsilon: 1e-8,
            min_terms: 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrjunoVerdict {
    ConvergedWithinBudget,
    DivergedBeyondThreshold,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct BrjunoReport {
    /// Convergents p_n / q_n of |target|.
    pub convergents: Vec<(BigInt, BigInt)>,
    /// Partial sums of the increments log(q_{n+1}) / q_n (natural log).
    pub partial_sums: Vec<f64>,
    pub verdict: BrjunoVerdict,
    /// Increment index n at which the verdict fired, when it did.
    pub decided_at: Option<usize>,
    pub budget: BrjunoBudget,
}

/// ln of a positive big integer without overflowing f64.
pub fn ln_big(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 52 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 52;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Exact partial-quotient stream for a real quadratic irrational
/// x = (p + b sqrt(d)) / q, all integer data, d > 0 non-square.
///
/// The state stays in this shape under the CF step; coefficients are gcd
/// reduced each round. No floating point anywhere.
struct SurdQuotients {
    p: BigInt,
    b: BigInt,
    q: BigInt,
    d: BigInt,
}

impl SurdQuotients {
    fn new(a: &BigInt, b: &BigInt, d: &BigInt, q: &BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(CoreError::InvalidTarget("zero denominator".into()));
        }
        if b.is_zero() {
            return Err(CoreError::RationalInput);
        }
        if !d.is_positive() || d.sqrt().pow(2) == *d {
            return Err(CoreError::InvalidTarget(
                "surd radicand must be a positive non-square".into(),
            ));
        }
        let mut s = SurdQuotients {
            p: a.clone(),
            b: b.clone(),
            q: q.clone(),
            d: d.clone(),
        };
        if s.is_negative() {
            s.q = -s.q; // |x|
        }
        Ok(s)
    }

    /// The open unit interval (u, u+1) containing the numerator p + b sqrt(d).
    fn numerator_floor(&self) -> BigInt {
        let s = (&self.b * &self.b * &self.d).sqrt();
        if self.b.is_positive() {
            &self.p + s
        } else {
            &self.p - s - 1
        }
    }

    fn is_negative(&self) -> bool {
        let u = self.numerator_floor();
        // numerator in (u, u+1), never an integer, so sign(num) = sign by u
        let num_neg = u < BigInt::zero();
        num_neg != self.q.is_negative()
    }

    /// floor((p + b sqrt(d)) / q), exactly.
    fn floor(&self) -> BigInt {
        let u = self.numerator_floor();
        // Numerator lies in (u, u+1) and no integer multiple of q can lie
        // strictly inside a unit interval, so the floor is determined by u.
        let (u, q) = if self.q.is_positive() {
            (u, self.q.clone())
        } else {
            (-u - 1, -self.q.clone())
        };
        u.div_floor(&q)
    }

    fn next_quotient(&mut self) -> BigInt {
        let a = self.floor();
        // x <- 1 / (x - a):
        //   x - a = (p' + b sqrt(d)) / q, p' = p - a q
        //   1/(x-a) = q (p' - b sqrt(d)) / (p'^2 - b^2 d)
        let p1 = &self.p - &a * &self.q;
        let denom = &p1 * &p1 - &self.b * &self.b * &self.d;
        self.p = &self.q * &p1;
        self.b = -(&self.q * &self.b);
        self.q = denom;
        let g = self.p.gcd(&self.b).gcd(&self.q);
        if g > BigInt::from(1) {
            self.p /= &g;
            self.b /= &g;
            self.q /= &g;
        }
        a
    }
}

/// Euclidean partial quotients of |r|; terminates.
fn rational_quotients(r: &BigRational, cap: usize) -> Vec<BigInt> {
    let mut num = r.numer().abs();
    let mut den = r.denom().abs();
    let mut out = Vec::new();
    while !den.is_zero() && out.len() < cap {
        let (a, rem) = num.div_rem(&den);
        out.push(a);
        num = den;
        den = rem;
    }
    out
}

/// Budgeted Brjuno verdict for an irrational real target.
pub fn brjuno_report(target: &BrjunoTarget, budget: &BrjunoBudget) -> Result<BrjunoReport> {
    enum Stream {
        Surd(SurdQuotients),
        Fixed(std::vec::IntoIter<BigInt>),
    }

    impl Stream {
        fn next(&mut self) -> Option<BigInt> {
            match self {
                Stream::Surd(s) => Some(s.next_quotient()),
                Stream::Fixed(it) => it.next(),
            }
        }
    }

    let mut stream = match target {
        BrjunoTarget::Rational(_) => return Err(CoreError::RationalInput),
        BrjunoTarget::Surd { a, b, d, q } => Stream::Surd(SurdQuotients::new(a, b, d, q)?),
        BrjunoTarget::Truncation(r) => {
            if r.is_zero() {
                return Err(CoreError::InvalidTarget("zero target".into()));
            }
            Stream::Fixed(rational_quotients(r, budget.max_terms + 2).into_iter())
        }
        BrjunoTarget::Quotients(qs) => {
            if qs.is_empty() {
                return Err(CoreError::InvalidTarget("empty quotient stream".into()));
            }
            if qs.iter().skip(1).any(|a| !a.is_positive()) {
                return Err(CoreError::InvalidTarget(
                    "partial quotients beyond a0 must be positive".into(),
                ));
            }
            Stream::Fixed(qs.clone().into_iter())
        }
    };

    let Some(a0) = stream.next() else {
        return Err(CoreError::InvalidTarget("empty expansion".into()));
    };

    let mut convergents = vec![(a0, BigInt::from(1))];
    let mut partial_sums = Vec::new();
    let mut verdict = BrjunoVerdict::Inconclusive;
    let mut decided_at = None;
    let mut sum = 0.0;

    // p_{-1} = 1, q_{-1} = 0
    let (mut p_prev, mut q_prev) = (BigInt::from(1), BigInt::from(0));

    for n in 0..budget.max_terms {
        let Some(a) = stream.next() else {
            break; // truncation exhausted without a verdict
        };
        let (p_n, q_n) = convergents.last().unwrap().clone();
        let p_next = &a * &p_n + &p_prev;
        let q_next = &a * &q_n + &q_prev;

        // increment I_n = ln(q_{n+1}) / q_n
        let q_n_f = q_n.to_f64().unwrap_or(f64::INFINITY);
        let inc = ln_big(&q_next) / q_n_f;
        sum += inc;
        partial_sums.push(sum);

        convergents.push((p_next, q_next));
        p_prev = p_n;
        q_prev = q_n;

        if sum > budget.divergence_threshold {
            verdict = BrjunoVerdict::DivergedBeyondThreshold;
            decided_at = Some(n);
            break;
        }
        if n >= budget.min_terms && inc < budget.convergence_epsilon {
            verdict = BrjunoVerdict::ConvergedWithinBudget;
            decided_at = Some(n);
            break;
        }
    }

    Ok(BrjunoReport {
        convergents,
        partial_sums,
        verdict,
        decided_at,
        budget: *budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> BrjunoTarget {
        // (1 + sqrt(5)) / 2
        BrjunoTarget::Surd {
            a: BigInt::from(1),
            b: BigInt::from(1),
            d: BigInt::from(5),
            q: BigInt::from(2),
        }
    }

    #[test]
    fn golden_ratio_denominators_are_fibonacci() {
        let rep = brjuno_report(&golden(), &BrjunoBudget::default()).unwrap();
        // q_0 = 1, q_1 = 1, then q_{n+1} = q_n + q_{n-1}
        assert_eq!(rep.convergents[0].1, BigInt::from(1));
        assert_eq!(rep.convergents[1].1, BigInt::from(1));
        for w in rep.convergents.windows(3) {
            assert_eq!(w[2].1, &w[1].1 + &w[0].1);
        }
    }

    #[test]
    fn golden_ratio_converges_within_budget() {
        let rep = brjuno_report(&golden(), &BrjunoBudget::default()).unwrap();
        assert_eq!(rep.verdict, BrjunoVerdict::ConvergedWithinBudget);

        // Oracle: q_n Fibonacci; find the first increment below 1e-8 by
        // direct partial-sum computation.
        let mut q = vec![BigInt::from(1), BigInt::from(1)];
        for _ in 0..80 {
            let next = &q[q.len() - 1] + &q[q.len() - 2];
            q.push(next);
        }
        let budget = BrjunoBudget::default();
        let mut first_small = None;
        for n in budget.min_terms..78 {
            let inc = ln_big(&q[n + 1]) / q[n].to_f64().unwrap();
            if inc < budget.convergence_epsilon {
                first_small = Some(n);
                break;
            }
        }
        let first_small = first_small.expect("increments eventually drop below 1e-8");
        assert_eq!(rep.decided_at, Some(first_small));
        // The spec sketch places this before n = 40; the direct computation
        // puts it in the mid-40s. The oracle value wins.
        assert!((40..=50).contains(&first_small), "got {first_small}");
    }

    #[test]
    fn rational_input_rejected() {
        let r = BrjunoTarget::Rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(matches!(
            brjuno_report(&r, &BrjunoBudget::default()),
            Err(CoreError::RationalInput)
        ));
    }

    #[test]
    fn partial_sums_monotone() {
        let rep = brjuno_report(&golden(), &BrjunoBudget::default()).unwrap();
        for w in rep.partial_sums.windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn sqrt2_expansion_and_verdict() {
        let t = BrjunoTarget::Surd {
            a: BigInt::from(0),
            b: BigInt::from(1),
            d: BigInt::from(2),
            q: BigInt::from(1),
        };
        let rep = brjuno_report(&t, &BrjunoBudget::default()).unwrap();
        assert_eq!(rep.verdict, BrjunoVerdict::ConvergedWithinBudget);
        // sqrt(2) = [1; 2, 2, 2, ...]: q's satisfy q_{n+1} = 2 q_n + q_{n-1}
        assert_eq!(rep.convergents[0], (BigInt::from(1), BigInt::from(1)));
        for w in rep.convergents.windows(3) {
            assert_eq!(w[2].1, BigInt::from(2) * &w[1].1 + &w[0].1);
            assert_eq!(w[2].0, BigInt::from(2) * &w[1].0 + &w[0].0);
        }
    }

    #[test]
    fn planted_giant_quotient_diverges() {
        // One quotient of size ~10^60 pushes ln(q_2)/q_1 past a threshold of
        // 10; the acceptance-scale construction uses ~10^4000 against 1e3.
        let big = BigInt::from(10).pow(60);
        let t = BrjunoTarget::Quotients(vec![BigInt::from(0), BigInt::from(9), big]);
        let budget = BrjunoBudget {
            divergence_threshold: 10.0,
            ..Default::default()
        };
        let rep = brjuno_report(&t, &budget).unwrap();
        assert_eq!(rep.verdict, BrjunoVerdict::DivergedBeyondThreshold);
    }

    #[test]
    fn negative_surd_uses_absolute_value() {
        // -(1+sqrt(5))/2 expands like the golden ratio itself.
        let neg = BrjunoTarget::Surd {
            a: BigInt::from(-1),
            b: BigInt::from(-1),
            d: BigInt::from(5),
            q: BigInt::from(2),
        };
        let a = brjuno_report(&neg, &BrjunoBudget::default()).unwrap();
        let b = brjuno_report(&golden(), &BrjunoBudget::default()).unwrap();
        assert_eq!(a.convergents, b.convergents);
    }

    #[test]
    fn surd_stream_matches_euclid_on_rational_prefix() {
        // The exact surd expansion of (3 + sqrt(7))/2 and the Euclid
        // expansion of a 10-digit decimal approximation must agree on the
        // leading convergents.
        let t = BrjunoTarget::Surd {
            a: BigInt::from(3),
            b: BigInt::from(1),
            d: BigInt::from(7),
            q: BigInt::from(2),
        };
        let surd = brjuno_report(&t, &BrjunoBudget::default()).unwrap();
        // value ~ 2.8228756555
        let approx = BigRational::new(BigInt::from(28228756555i64), BigInt::from(10000000000i64));
        let trunc = brjuno_report(&BrjunoTarget::Truncation(approx), &BrjunoBudget::default())
            .unwrap();
        assert_eq!(&surd.convergents[..6], &trunc.convergents[..6]);
    }
}
