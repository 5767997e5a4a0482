//! Polynomial certificates for multiple roots of rational functions.
//!
//! The gcd here is a primitive pseudo-remainder sequence over the integers,
//! deliberately separate from the oracle's monic Euclid so that the two can
//! be cross-checked.

use crate::expr::Expr;
use crate::oracle::RatPoly;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `e = num/den` when `e` is a rational function of `x` without `pi`.
pub fn rational_parts(e: &Expr) -> Option<(RatPoly, RatPoly)> {
    Some(match e {
        Expr::Const(q) => (RatPoly::constant(q.clone()), RatPoly::one()),
        Expr::Var => (RatPoly::x(), RatPoly::one()),
        Expr::Pi | Expr::Apply(..) => return None,
        Expr::Neg(a) => {
            let (n, d) = rational_parts(a)?;
            (n.scale(&-BigRational::one()), d)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (n1, d1) = rational_parts(a)?;
            let (n2, d2) = rational_parts(b)?;
            let (l, r) = (n1.mul(&d2), n2.mul(&d1));
            let n = if matches!(e, Expr::Add(..)) {
                l.add(&r)
            } else {
                l.sub(&r)
            };
            (n, d1.mul(&d2))
        }
        Expr::Mul(a, b) => {
            let (n1, d1) = rational_parts(a)?;
            let (n2, d2) = rational_parts(b)?;
            (n1.mul(&n2), d1.mul(&d2))
        }
        Expr::Div(a, b) => {
            let (n1, d1) = rational_parts(a)?;
            let (n2, d2) = rational_parts(b)?;
            if n2.is_zero() {
                return None;
            }
            (n1.mul(&d2), d1.mul(&n2))
        }
        Expr::Pow(a, k) => {
            let (n, d) = rational_parts(a)?;
            (n.pow(*k), d.pow(*k))
        }
    })
}

fn primitive(p: &RatPoly) -> RatPoly {
    RatPoly::new(
        p.primitive_integer()
            .into_iter()
            .map(BigRational::from_integer)
            .collect(),
    )
}

/// Pseudo-remainder of integer polynomials: `lc(b)^e * a mod b`.
fn pseudo_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.lc();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let mut shift = vec![BigRational::zero(); dr - db];
        shift.push(r.lc());
        r = r.scale(&lb).sub(&RatPoly::new(shift).mul(b));
    }
    r
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn prs_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (primitive(a), primitive(b));
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = primitive(&pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    x.monic()
}

/// `gcd(p, p', ..., p^(k-1))`: its roots are the roots of `p` of
/// multiplicity at least `k`.
pub fn gcd_chain(p: &RatPoly, k: u32) -> RatPoly {
    let mut g = p.clone();
    let mut d = p.clone();
    for _ in 1..k {
        d = d.derivative();
        g = prs_gcd(&g, &d);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

/// `p / gcd(p, p')`, monic.
pub fn squarefree(p: &RatPoly) -> RatPoly {
    let g = prs_gcd(p, &p.derivative());
    let (mut q, mut r) = (RatPoly::zero(), p.clone());
    // exact division by repeated leading-term subtraction
    let dg = g.degree().unwrap_or(0);
    while let Some(dr) = r.degree() {
        if dr < dg {
            break;
        }
        let mut t = vec![BigRational::zero(); dr - dg];
        t.push(r.lc() / g.lc());
        let t = RatPoly::new(t);
        r = r.sub(&t.mul(&g));
        q = q.add(&t);
    }
    debug_assert!(r.is_zero());
    q.monic()
}

/// Integer-valued sign of `p` at `x`.
pub fn sign_at(p: &RatPoly, x: &BigRational) -> i32 {
    let v = p.eval(x);
    if v.is_zero() {
        0
    } else if v > BigRational::zero() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use num_bigint::BigInt;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn poly(s: &str) -> RatPoly {
        rational_parts(&parse(s).unwrap()).unwrap().0
    }

    #[test]
    fn rational_parts_combine_fractions() {
        let (n, d) = rational_parts(&parse("1/(x+1) - 1/2").unwrap()).unwrap();
        assert_eq!(n.eval(&int(1)), BigRational::zero());
        assert_eq!(d.eval(&int(1)), int(2));
        assert!(rational_parts(&parse("sin(x)").unwrap()).is_none());
    }

    #[test]
    fn prs_gcd_matches_known_factors() {
        assert_eq!(prs_gcd(&poly("x^2 - 1"), &poly("x^2 - x")), poly("x - 1"));
        assert_eq!(
            prs_gcd(&poly("(x-1/2)^2"), &poly("(x-1/2)*(x-1/3)")),
            poly("x - 1/2")
        );
        assert_eq!(prs_gcd(&poly("x^2 + 1"), &poly("x")), RatPoly::one());
    }

    #[test]
    fn gcd_chain_keeps_high_multiplicity_roots() {
        let p = poly("(x^2 - 1/2)^3*(x - 1/3)^2*(x-1/5)");
        assert_eq!(gcd_chain(&p, 2), poly("(x^2 - 1/2)^2*(x - 1/3)"));
        assert_eq!(gcd_chain(&p, 3), poly("x^2 - 1/2"));
        assert_eq!(gcd_chain(&p, 4), RatPoly::one());
        assert_eq!(squarefree(&p), poly("(x^2 - 1/2)*(x - 1/3)*(x-1/5)"));
    }
}
