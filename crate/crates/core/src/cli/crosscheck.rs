//! Exact cross-checks of pipeline results on polynomial inputs.

use super::Failure;
use crate::expr::Expr;
use crate::ideals::Ideal;
use crate::oracle::{
    exact_unit_interval_divisor, poly_divmod, poly_gcd, sturm_count, OracleRoot, RatPoly,
};
use crate::roots::{Divisor, Point, Zeros};
use crate::taylor::{Coef, Scalar};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy)]
pub(super) enum Op {
    Sum,
    Product,
    Intersect,
    Quotient,
    Radical,
}

fn disagree(what: &str) -> Failure {
    Failure::Oracle(format!("exact oracle disagrees on {what}"))
}

fn sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn point_matches(p: &Point, r: &OracleRoot) -> bool {
    match (p, r) {
        (Point::Exact(a), OracleRoot::Exact(b)) => a == b,
        (Point::Exact(_), OracleRoot::Isolated { .. }) => false,
        (Point::Enclosure(_), OracleRoot::Exact(b)) => &p.lo() <= b && b <= &p.hi(),
        (Point::Enclosure(_), OracleRoot::Isolated { lo, hi, factor }) => {
            let (a, b) = (p.lo(), p.hi());
            lo <= &a && &b <= hi && sign(&factor.eval(&a)) * sign(&factor.eval(&b)) < 0
        }
    }
}

/// Same points and multiplicities as the exact divisor of `p` on `[0,1]`.
pub(crate) fn divisor_matches(d: &Divisor, p: &RatPoly) -> bool {
    let oracle = exact_unit_interval_divisor(p);
    d.len() == oracle.len()
        && d.entries()
            .iter()
            .zip(&oracle)
            .all(|((pt, m), (r, n))| m == n && point_matches(pt, r))
}

pub(super) fn roots(f: &Expr, zeros: &Zeros) -> Result<(), Failure> {
    let Some(p) = RatPoly::from_expr(f) else {
        return Ok(());
    };
    let ok = match zeros {
        Zeros::ZeroFunction => p.is_zero(),
        Zeros::Divisor(d) => !p.is_zero() && divisor_matches(d, &p),
    };
    if ok {
        Ok(())
    } else {
        Err(disagree("the divisor"))
    }
}

fn agrees(v: &Scalar, exact: &BigRational, prec: u32) -> bool {
    match v.as_rational() {
        Some(q) => q == exact,
        None => !v.is_exact() && v.enclosure(prec).contains_rational(exact),
    }
}

pub(super) fn eval(f: &Expr, at: &BigRational, v: &Scalar, prec: u32) -> Result<(), Failure> {
    match RatPoly::from_expr(f) {
        Some(p) if !agrees(v, &p.eval(at), prec) => Err(disagree("the value")),
        _ => Ok(()),
    }
}

/// Taylor coefficients of `p` at `g`, exactly.
fn taylor_at(p: &RatPoly, g: &BigRational, count: usize) -> Vec<BigRational> {
    let mut d = p.clone();
    let mut fact = BigRational::from_integer(1.into());
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        if n > 0 {
            fact *= BigRational::from_integer(n.into());
        }
        out.push(d.eval(g) / &fact);
        d = d.derivative();
    }
    out
}

pub(super) fn deflate(
    f: &Expr,
    g: &BigRational,
    coeffs: &[Scalar],
    prec: u32,
) -> Result<(), Failure> {
    let Some(p) = RatPoly::from_expr(f) else {
        return Ok(());
    };
    let shifted = p.sub(&RatPoly::constant(p.eval(g)));
    let (q, r) = poly_divmod(&shifted, &RatPoly::linear(g)).expect("nonzero divisor");
    debug_assert!(r.is_zero());
    let expected = taylor_at(&q, g, coeffs.len());
    if coeffs
        .iter()
        .zip(&expected)
        .all(|(c, e)| agrees(c, e, prec))
    {
        Ok(())
    } else {
        Err(disagree("the deflated coefficients"))
    }
}

pub(super) fn ideal(f: &Expr, i: &Ideal) -> Result<(), Failure> {
    let Some(p) = RatPoly::from_expr(f) else {
        return Ok(());
    };
    let ok = match i.divisor() {
        None => p.is_zero(),
        Some(d) => !p.is_zero() && divisor_matches(d, &p),
    };
    if ok {
        Ok(())
    } else {
        Err(disagree("the ideal"))
    }
}

fn quo(a: &RatPoly, b: &RatPoly) -> RatPoly {
    poly_divmod(a, b).expect("nonzero divisor").0
}

pub(super) fn binary(f: &Expr, g: &Expr, result: &Ideal, op: Op) -> Result<(), Failure> {
    let (Some(p), Some(q)) = (RatPoly::from_expr(f), RatPoly::from_expr(g)) else {
        return Ok(());
    };
    if p.is_zero() || q.is_zero() {
        return Ok(());
    }
    let gcd = poly_gcd(&p, &q).expect("nonzero inputs");
    let expected = match op {
        Op::Sum => gcd,
        Op::Product => p.mul(&q),
        Op::Intersect => quo(&p.mul(&q), &gcd),
        Op::Quotient => quo(&p, &gcd),
        Op::Radical => quo(&p, &poly_gcd(&p, &p.derivative()).expect("nonzero input")),
    };
    match result.divisor() {
        Some(d) if divisor_matches(d, &expected) => Ok(()),
        _ => Err(disagree("the ideal operation")),
    }
}

/// `gcd(p, p', ..., p^(m-1))`: its roots are the roots of `p` of
/// multiplicity at least `m`.
fn high_multiplicity_part(p: &RatPoly, m: u32) -> RatPoly {
    let mut g = p.clone();
    let mut d = p.clone();
    for _ in 1..m {
        d = d.derivative();
        g = poly_gcd(&g, &d).expect("nonzero input");
    }
    g
}

/// Exact membership on `[0,1]`: `p` vanishes to order at least `m` at each
/// zero of `q` of multiplicity `m`.
pub(crate) fn oracle_membership(p: &RatPoly, q: &RatPoly) -> bool {
    if q.is_zero() {
        return p.is_zero();
    }
    if p.is_zero() {
        return true;
    }
    exact_unit_interval_divisor(q).iter().all(|(r, m)| {
        let h = high_multiplicity_part(p, *m);
        match r {
            OracleRoot::Exact(x) => h.eval(x).is_zero(),
            OracleRoot::Isolated { lo, hi, factor } => {
                let common = poly_gcd(factor, &h).expect("nonzero input");
                sturm_count(&common, lo, hi) > 0
            }
        }
    })
}

pub(super) fn membership(f: &Expr, g: &Expr, verdict: bool) -> Result<(), Failure> {
    match (RatPoly::from_expr(f), RatPoly::from_expr(g)) {
        (Some(p), Some(q)) if oracle_membership(&p, &q) != verdict => Err(disagree("membership")),
        _ => Ok(()),
    }
}
