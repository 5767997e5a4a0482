//! Rigorous Taylor coefficients, interval evaluation and deflation.

pub mod dyadic;
pub mod elementary;
pub mod interval;
pub mod model;
pub mod scalar;
pub mod series;

pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
pub use model::{taylor_model, TaylorModel};
pub use scalar::{Coef, QPi, Scalar};

use crate::expr::Expr;
use num_rational::BigRational;
use thiserror::Error;

/// Working precisions, in bits, tried in order by every tri-state decision.
pub const LADDER: [u32; 5] = [53, 128, 256, 512, 1024];

/// Ladder rungs from `start` up to and including `cap`.
pub fn ladder(start: u32, cap: u32) -> Vec<u32> {
    let mut rungs: Vec<u32> = LADDER
        .iter()
        .copied()
        .filter(|&p| p >= start && p <= cap)
        .collect();
    if rungs.is_empty() {
        rungs.push(start.min(cap).max(2));
    }
    rungs
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaylorError {
    #[error("not analytic: a denominator may vanish on {witness}")]
    NotAnalytic { witness: Interval },
}

/// Expansion point for [`taylor_coeffs`].
#[derive(Debug, Clone)]
pub enum Center {
    Rational(BigRational),
    /// Coefficients then enclose the derivatives over the whole interval.
    Enclosure(Interval),
}

impl Center {
    pub fn interval(&self, prec: u32) -> Interval {
        match self {
            Center::Rational(q) => Interval::from_rational(q, prec),
            Center::Enclosure(i) => i.clone(),
        }
    }
}

/// `out[n]` encloses `f^(n)(center)/n!` for `n <= order`. A singular
/// denominator is retried up the ladder before giving up.
pub fn taylor_coeffs(
    f: &Expr,
    center: &Center,
    order: usize,
    prec: u32,
) -> Result<Vec<Interval>, TaylorError> {
    let mut err = None;
    for p in std::iter::once(prec).chain(LADDER.iter().copied().filter(|&p| p > prec)) {
        let out = match center {
            Center::Rational(q) => series::series(f, &Scalar::rational(q.clone()), order, p)
                .map(|v| v.iter().map(|c| c.enclosure(p)).collect()),
            Center::Enclosure(i) => series::series(f, i, order, p),
        };
        match out {
            Ok(v) => return Ok(v),
            Err(_) => err = Some(center.interval(p)),
        }
    }
    Err(TaylorError::NotAnalytic {
        witness: err.unwrap_or_else(|| center.interval(prec)),
    })
}

/// Exact-where-possible coefficients at a rational center: polynomial and
/// rational functions give exact rationals, `pi` is carried symbolically.
pub fn taylor_coeffs_exact(
    f: &Expr,
    center: &BigRational,
    order: usize,
    prec: u32,
) -> Result<Vec<Scalar>, TaylorError> {
    series::series(f, &Scalar::rational(center.clone()), order, prec).map_err(|_| {
        TaylorError::NotAnalytic {
            witness: Interval::from_rational(center, prec),
        }
    })
}

/// Exact-where-possible value at a rational point.
pub fn eval_exact(f: &Expr, at: &BigRational, prec: u32) -> Result<Scalar, TaylorError> {
    Ok(taylor_coeffs_exact(f, at, 0, prec)?.swap_remove(0))
}

/// Coefficient shift `a_n -> a_{n+1}`: the series of `(f(x) - f(c))/(x - c)`.
pub fn deflate<T: Clone>(coeffs: &[T]) -> Vec<T> {
    debug_assert!(
        coeffs.len() >= 2,
        "deflation needs at least two coefficients"
    );
    coeffs.iter().skip(1).cloned().collect()
}

/// Sanity check that `g = deflate(f)` satisfies `|g_n| <= (n+1)|f_{n+1}|`
/// up to a relative slack of `2^-prec`.
pub fn domination_check(f: &[Interval], g: &[Interval], prec: u32) -> bool {
    if g.len() + 1 != f.len() {
        return false;
    }
    g.iter().enumerate().all(|(n, gn)| {
        let m = f[n + 1]
            .mag()
            .mul(&Dyadic::from_i64(n as i64 + 1), prec, Round::Up);
        let bound = m.add(&m.mul_pow2(-(prec as i64)), prec, Round::Up);
        gn.mag() <= bound
    })
}

/// Enclosure of `{ f(x) : x in at }`. A point argument is evaluated in the
/// exact lane; a wide one by the centered form intersected with the natural
/// extension, bisecting where a denominator cannot be bounded away from 0.
pub fn eval(f: &Expr, at: &Interval, prec: u32) -> Result<Interval, TaylorError> {
    if at.is_point() {
        return Ok(eval_exact(f, &at.lo().to_rational(), prec)?.enclosure(prec));
    }
    eval_box(f, at, prec, 0).ok_or_else(|| TaylorError::NotAnalytic {
        witness: at.clone(),
    })
}

fn eval_box(f: &Expr, at: &Interval, prec: u32, depth: u32) -> Option<Interval> {
    if let Ok(v) = centered(f, at, prec) {
        return Some(v);
    }
    if depth >= 16 {
        return None;
    }
    let (l, r) = at.split();
    Some(eval_box(f, &l, prec, depth + 1)?.hull(&eval_box(f, &r, prec, depth + 1)?))
}

fn centered(f: &Expr, at: &Interval, prec: u32) -> Result<Interval, series::SingularDenominator> {
    let over = series::series(f, at, 1, prec)?;
    let mid = at.mid();
    let at_mid = series::series(f, &Interval::point(mid.clone()), 0, prec)?;
    let h = at.sub(&Interval::point(mid), prec);
    let cf = at_mid[0].add(&over[1].mul(&h, prec), prec);
    Ok(cf.intersect(&over[0]).unwrap_or(over[0].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn close(i: &Interval, v: f64, tol: f64) -> bool {
        i.lo().to_f64() - tol <= v && v <= i.hi().to_f64() + tol && i.width().to_f64() <= tol
    }

    #[test]
    fn exponential_coefficients() {
        let c = taylor_coeffs(
            &parse("exp(x)").unwrap(),
            &Center::Rational(BigRational::zero()),
            4,
            128,
        )
        .unwrap();
        for (n, want) in [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0].iter().enumerate() {
            assert!(close(&c[n], *want, 1e-30), "{n}");
        }
    }

    #[test]
    fn polynomial_coefficients_are_exact() {
        let c =
            taylor_coeffs_exact(&parse("x^2 - 1").unwrap(), &BigRational::one(), 2, 53).unwrap();
        let got: Vec<_> = c
            .iter()
            .map(|s| s.as_rational().cloned().unwrap())
            .collect();
        assert_eq!(got, vec![q(0, 1), q(2, 1), q(1, 1)]);
    }

    #[test]
    fn deflation_and_domination() {
        let c = taylor_coeffs(
            &parse("x^2 - 1").unwrap(),
            &Center::Rational(BigRational::one()),
            2,
            53,
        )
        .unwrap();
        let g = deflate(&c);
        assert_eq!(g, vec![Interval::from_i64(2), Interval::one()]);
        assert!(domination_check(&c, &g, 53));
        assert!(!domination_check(&c, &c, 53));
        assert_eq!(deflate(&[1, 2]), vec![2]);
    }

    #[test]
    fn singular_center_is_reported() {
        let e = taylor_coeffs(
            &parse("1/(x - 1/2)").unwrap(),
            &Center::Rational(q(1, 2)),
            2,
            53,
        );
        assert!(matches!(e, Err(TaylorError::NotAnalytic { .. })));
    }

    #[test]
    fn eval_examples() {
        let half = Interval::from_rational(&q(1, 2), 53);
        assert_eq!(
            eval(&parse("x^2 + 1").unwrap(), &half, 53).unwrap(),
            Interval::from_rational(&q(5, 4), 53)
        );
        let one = eval(&parse("exp(x)").unwrap(), &Interval::zero(), 53).unwrap();
        assert_eq!(one, Interval::one());
        let s = eval(&parse("sin(pi*x)").unwrap(), &Interval::unit(), 53).unwrap();
        assert!(s.contains_interval(&Interval::unit()));
    }

    #[test]
    fn eval_bisects_through_loose_denominators() {
        // natural extension of x^2 - x + 1 on [0,1] is [0,2]
        let v = eval(&parse("1/(x^2 - x + 1)").unwrap(), &Interval::unit(), 64).unwrap();
        let range = Interval::from_rational_bounds(&q(1, 1), &q(4, 3), 64);
        assert!(v.contains_interval(&range) && v.hi().to_f64().is_finite());
    }

    #[test]
    fn ladder_bounds() {
        assert_eq!(ladder(53, 1024), LADDER.to_vec());
        assert_eq!(ladder(128, 256), vec![128, 256]);
    }
}
