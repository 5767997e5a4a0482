//! Deciding whether two certified points are the same real number.

use super::{poly, refine, vanishes_to_order, Config, Enclosure, Point, RootsError};
use crate::taylor::{series, Dyadic};

/// Refinement rounds before giving up.
const ROUNDS: usize = 6;

/// `true` if `a` and `b` denote the same point.
pub fn identify(a: &Point, b: &Point, cfg: &Config) -> Result<bool, RootsError> {
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..ROUNDS {
        if let Some(same) = decide(&a, &b, cfg) {
            return Ok(same);
        }
        a = narrow(&a, cfg)?;
        b = narrow(&b, cfg)?;
    }
    Err(RootsError::PointIdentityUndecidable {
        a: Box::new(a),
        b: Box::new(b),
    })
}

fn narrow(p: &Point, cfg: &Config) -> Result<Point, RootsError> {
    match p {
        Point::Exact(_) => Ok(p.clone()),
        Point::Enclosure(e) => {
            let target = e.interval.width().mul_pow2(-32);
            if target.is_zero() || target < Dyadic::pow2(-(cfg.max_precision as i64)) {
                return Ok(p.clone());
            }
            refine(p, &target, cfg)
        }
    }
}

fn decide(a: &Point, b: &Point, cfg: &Config) -> Option<bool> {
    if a.hi() < b.lo() || b.hi() < a.lo() {
        return Some(false);
    }
    match (a, b) {
        (Point::Exact(p), Point::Exact(q)) => Some(p == q),
        (Point::Exact(q), Point::Enclosure(e)) | (Point::Enclosure(e), Point::Exact(q)) => {
            vanishes_to_order(&e.source, q, e.order, cfg.max_precision)
        }
        (Point::Enclosure(x), Point::Enclosure(y)) => enclosures(x, y, cfg),
    }
}

fn enclosures(x: &Enclosure, y: &Enclosure, cfg: &Config) -> Option<bool> {
    // The outer certificate holding on the hull leaves room for one zero of
    // the outer source only; a zero of one of its factors there must be it.
    let hull = x.interval.hull(&y.interval);
    let prec = cfg.precision.max(128);
    for (inner, outer) in [(x, y), (y, x)] {
        if (inner.source == outer.source || outer.source.has_structural_factor(&inner.source))
            && series::series(&outer.source, &hull, outer.order as usize, prec)
                .is_ok_and(|c| c[outer.order as usize].excludes_zero())
        {
            return Some(true);
        }
    }
    let (p1, _) = poly::rational_parts(&x.source)?;
    let (p2, _) = poly::rational_parts(&y.source)?;
    let g = poly::prs_gcd(&p1, &p2);
    if g.degree().unwrap_or(0) == 0 {
        return Some(false);
    }
    let (lo, hi) = x.interval.intersect(&y.interval)?.to_rational_bounds();
    let g = poly::squarefree(&g);
    (poly::sign_at(&g, &lo) * poly::sign_at(&g, &hi) < 0).then_some(true)
}
