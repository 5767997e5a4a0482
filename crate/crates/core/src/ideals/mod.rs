//! Principal-ideal algebra through divisors.
//!
//! Every ideal of the ring is principal and generated by
//! `prod (x - g_i)^{m_i}` over the zeros of any generator, so an ideal is
//! its divisor. All operations work on divisors alone; the generator an
//! ideal was built from is kept for display only.

use crate::expr::Expr;
use crate::roots::{
    check_analytic, identify, isolate_zeros, vanishes_to_order, Config, Divisor, Point, RootsError,
    Zeros,
};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum IdealError {
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error("the colon ideal by the zero ideal is not defined here")]
    ZeroDivisorArgument,
    #[error("the zero ideal has no factorization into maximal ideals")]
    ZeroIdealNotFactorable,
}

#[derive(Debug, Clone)]
pub enum Ideal {
    Zero,
    Principal {
        divisor: Divisor,
        generator: Option<Expr>,
    },
}

/// One maximal ideal `<x - point>` raised to `exponent`.
#[derive(Debug, Clone)]
pub struct MaximalFactor {
    pub point: Point,
    pub exponent: u32,
}

/// A generator in closed form, or the factors when some point is irrational.
#[derive(Debug, Clone)]
pub enum Generator {
    Expr(Expr),
    Unrepresentable(Vec<MaximalFactor>),
}

impl Ideal {
    pub fn unit() -> Ideal {
        Ideal::from_divisor(Divisor::empty())
    }

    pub fn from_divisor(divisor: Divisor) -> Ideal {
        Ideal::Principal {
            divisor,
            generator: None,
        }
    }

    /// The maximal ideal of functions vanishing at `p`.
    pub fn maximal(p: Point) -> Ideal {
        Ideal::from_divisor(Divisor::new(vec![(p, 1)]))
    }

    pub fn divisor(&self) -> Option<&Divisor> {
        match self {
            Ideal::Zero => None,
            Ideal::Principal { divisor, .. } => Some(divisor),
        }
    }

    pub fn generator(&self) -> Option<&Expr> {
        match self {
            Ideal::Principal { generator, .. } => generator.as_ref(),
            Ideal::Zero => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Ideal::Zero)
    }

    pub fn is_unit(&self) -> bool {
        self.divisor().is_some_and(Divisor::is_empty)
    }

    pub fn to_json(&self) -> Value {
        match self {
            Ideal::Zero => json!({"ideal": "zero"}),
            Ideal::Principal { divisor, generator } => json!({
                "ideal": "principal",
                "divisor": divisor.to_json(),
                "generator": generator.as_ref().map(|g| g.to_string()),
            }),
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Zero => write!(f, "zero ideal"),
            Ideal::Principal { divisor, .. } if divisor.is_empty() => write!(f, "unit ideal"),
            Ideal::Principal { divisor, .. } => write!(f, "{divisor}"),
        }
    }
}

impl MaximalFactor {
    pub fn to_json(&self) -> Value {
        json!({"point": self.point.to_json(), "exponent": self.exponent})
    }
}

impl fmt::Display for MaximalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.point {
            Point::Exact(q) if q.denom() == &1.into() => {
                write!(f, "M_{}^{}", self.point, self.exponent)
            }
            _ => write!(f, "M_{{{}}}^{}", self.point, self.exponent),
        }
    }
}

/// Factors joined as a product; `1` for the empty product.
pub fn render_factors(factors: &[MaximalFactor]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    factors
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(" · ")
}

pub fn factors_json(factors: &[MaximalFactor]) -> Value {
    Value::Array(factors.iter().map(MaximalFactor::to_json).collect())
}

/// The ideal `<f>`.
pub fn from_generator(f: &Expr, cfg: &Config) -> Result<Ideal, IdealError> {
    match isolate_zeros(f, cfg)? {
        Zeros::ZeroFunction => Ok(Ideal::Zero),
        Zeros::Divisor(divisor) => Ok(Ideal::Principal {
            divisor,
            generator: Some(f.clone()),
        }),
    }
}

/// `f` lies in `<g>` iff it vanishes at every zero of `g` to at least the
/// same order.
pub fn membership(f: &Expr, ideal: &Ideal, cfg: &Config) -> Result<bool, IdealError> {
    check_analytic(f, cfg)?;
    let divisor = match ideal {
        Ideal::Zero => return Ok(matches!(isolate_zeros(f, cfg)?, Zeros::ZeroFunction)),
        Ideal::Principal { divisor, .. } => divisor,
    };
    if divisor.is_empty() {
        return Ok(true);
    }
    // exact substitution settles rational points without isolating f
    let mut exact = Some(true);
    for (p, m) in divisor.entries() {
        let verdict = match p {
            Point::Exact(q) => vanishes_to_order(f, q, *m, cfg.max_precision.min(256)),
            Point::Enclosure(_) => None,
        };
        match verdict {
            Some(false) => return Ok(false),
            Some(true) => {}
            None => exact = None,
        }
    }
    if exact == Some(true) {
        return Ok(true);
    }
    let own = match isolate_zeros(f, cfg)? {
        Zeros::ZeroFunction => return Ok(true),
        Zeros::Divisor(d) => d,
    };
    let aligned = align(divisor, &own, cfg)?;
    Ok(aligned.iter().all(|(_, need, have)| have >= need))
}

/// Pair up the points of two divisors: each entry is a point with its
/// multiplicity in `a` and in `b` (0 where absent).
fn align(a: &Divisor, b: &Divisor, cfg: &Config) -> Result<Vec<(Point, u32, u32)>, RootsError> {
    let mut out: Vec<(Point, u32, u32)> = a
        .entries()
        .iter()
        .map(|(p, m)| (p.clone(), *m, 0))
        .collect();
    let mut taken = vec![false; out.len()];
    for (p, n) in b.entries() {
        let mut slot = None;
        for (i, (q, _, _)) in out.iter().enumerate() {
            if !taken[i] && identify(p, q, cfg)? {
                slot = Some(i);
                break;
            }
        }
        match slot {
            Some(i) => {
                taken[i] = true;
                out[i].2 = *n;
                if better(p, &out[i].0) {
                    out[i].0 = p.clone();
                }
            }
            None => {
                out.push((p.clone(), 0, *n));
                taken.push(true);
            }
        }
    }
    Ok(out)
}

/// Prefer exact points, then narrower enclosures.
fn better(p: &Point, than: &Point) -> bool {
    match (p, than) {
        (_, Point::Exact(_)) => false,
        (Point::Exact(_), _) => true,
        (Point::Enclosure(a), Point::Enclosure(b)) => a.interval.width() < b.interval.width(),
    }
}

fn combine(
    a: &Divisor,
    b: &Divisor,
    cfg: &Config,
    rule: impl Fn(u32, u32) -> u32,
) -> Result<Divisor, RootsError> {
    let aligned = align(a, b, cfg)?;
    Ok(Divisor::new(
        aligned
            .into_iter()
            .map(|(p, m, n)| (p, rule(m, n)))
            .collect(),
    ))
}

/// `I + J`, the gcd: pointwise minimum.
pub fn sum(i: &Ideal, j: &Ideal, cfg: &Config) -> Result<Ideal, IdealError> {
    match (i.divisor(), j.divisor()) {
        (None, _) => Ok(j.clone()),
        (_, None) => Ok(i.clone()),
        (Some(a), Some(b)) => Ok(Ideal::from_divisor(combine(a, b, cfg, u32::min)?)),
    }
}

/// `IJ`: multiplicities add.
pub fn product(i: &Ideal, j: &Ideal, cfg: &Config) -> Result<Ideal, IdealError> {
    let (Some(a), Some(b)) = (i.divisor(), j.divisor()) else {
        return Ok(Ideal::Zero);
    };
    let generator = match (i.generator(), j.generator()) {
        (Some(f), Some(g)) => Some(f.clone() * g.clone()),
        _ => None,
    };
    Ok(Ideal::Principal {
        divisor: combine(a, b, cfg, |m, n| m + n)?,
        generator,
    })
}

/// `I ∩ J`, the lcm: pointwise maximum.
pub fn intersect(i: &Ideal, j: &Ideal, cfg: &Config) -> Result<Ideal, IdealError> {
    let (Some(a), Some(b)) = (i.divisor(), j.divisor()) else {
        return Ok(Ideal::Zero);
    };
    Ok(Ideal::from_divisor(combine(a, b, cfg, u32::max)?))
}

/// The colon ideal `(I : J)`: truncated pointwise difference.
pub fn quotient(i: &Ideal, j: &Ideal, cfg: &Config) -> Result<Ideal, IdealError> {
    let Some(b) = j.divisor() else {
        return Err(IdealError::ZeroDivisorArgument);
    };
    let Some(a) = i.divisor() else {
        return Ok(Ideal::Zero);
    };
    Ok(Ideal::from_divisor(combine(a, b, cfg, |m, n| {
        m.saturating_sub(n)
    })?))
}

/// Equal divisors, with the unit ideal equal to itself whatever generated it.
pub fn equal(i: &Ideal, j: &Ideal, cfg: &Config) -> Result<bool, IdealError> {
    match (i.divisor(), j.divisor()) {
        (None, None) => Ok(true),
        (Some(a), Some(b)) => {
            if a.len() != b.len() || a.degree() != b.degree() {
                return Ok(false);
            }
            Ok(align(a, b, cfg)?.iter().all(|(_, m, n)| m == n))
        }
        _ => Ok(false),
    }
}

/// `<x - g>`: one point, multiplicity 1.
pub fn is_maximal(i: &Ideal) -> bool {
    i.divisor()
        .is_some_and(|d| d.len() == 1 && d.entries()[0].1 == 1)
}

/// The zero ideal and the maximal ideals.
pub fn is_prime(i: &Ideal) -> bool {
    i.is_zero() || is_maximal(i)
}

pub fn factor_maximals(i: &Ideal) -> Result<Vec<MaximalFactor>, IdealError> {
    let d = i.divisor().ok_or(IdealError::ZeroIdealNotFactorable)?;
    Ok(d.entries()
        .iter()
        .map(|(p, m)| MaximalFactor {
            point: p.clone(),
            exponent: *m,
        })
        .collect())
}

/// Same points, every multiplicity 1.
pub fn radical(i: &Ideal) -> Ideal {
    match i.divisor() {
        None => Ideal::Zero,
        Some(d) => Ideal::from_divisor(Divisor::new(
            d.entries().iter().map(|(p, _)| (p.clone(), 1)).collect(),
        )),
    }
}

/// `prod (x - g_i)^{m_i}` when every point is rational.
pub fn canonical_generator(i: &Ideal) -> Generator {
    let Some(d) = i.divisor() else {
        return Generator::Expr(Expr::int(0));
    };
    let rational: Option<Vec<(&BigRational, u32)>> = d
        .entries()
        .iter()
        .map(|(p, m)| p.as_exact().map(|q| (q, *m)))
        .collect();
    match rational {
        Some(points) => Generator::Expr(
            points
                .into_iter()
                .map(|(q, m)| match m {
                    1 => Expr::linear_factor(q),
                    _ => Expr::linear_factor(q).pow(m),
                })
                .reduce(|a, b| a * b)
                .unwrap_or_else(|| Expr::int(1)),
        ),
        None => Generator::Unrepresentable(factor_maximals(i).expect("nonzero ideal")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ideal(s: &str) -> Ideal {
        from_generator(&parse(s).unwrap(), &Config::default()).unwrap()
    }

    fn exact(i: &Ideal) -> Vec<(BigRational, u32)> {
        i.divisor()
            .unwrap()
            .entries()
            .iter()
            .map(|(p, m)| (p.as_exact().expect("rational point").clone(), *m))
            .collect()
    }

    fn same(a: &Ideal, b: &Ideal) -> bool {
        equal(a, b, &Config::default()).unwrap()
    }

    #[test]
    fn generators() {
        assert_eq!(exact(&ideal("x - 1/2")), vec![(q(1, 2), 1)]);
        assert!(ideal("7").is_unit());
        assert_eq!(
            exact(&ideal("x*(x-1/2)^2")),
            vec![(q(0, 1), 1), (q(1, 2), 2)]
        );
        assert!(ideal("0*exp(x)").is_zero());
        assert_eq!(ideal("x").generator().unwrap().to_string(), "x");
    }

    #[test]
    fn membership_examples() {
        let cfg = Config::default();
        let member = |f: &str, g: &str| membership(&parse(f).unwrap(), &ideal(g), &cfg).unwrap();
        assert!(member("x - 1", "x^2 - 1"));
        assert!(!member("x - 1/2", "x - 1/3"));
        assert!(member("exp(x)", "1"));
        assert!(member("x^2*(x-1/2)", "x"));
        assert!(!member("x", "x^2"));
        assert!(member("exp(x)*(x^2 - 1/2)", "x^2 - 1/2"));
        assert!(!member("x^2 - 1/3", "x^2 - 1/2"));
        assert!(member("0", "x"));
        assert!(member("0", "0"));
        assert!(!member("x", "0"));
        assert!(matches!(
            membership(&parse("1/(x - 1/2)").unwrap(), &Ideal::unit(), &cfg),
            Err(IdealError::Roots(RootsError::NotAnalytic { .. }))
        ));
    }

    #[test]
    fn sum_product_intersect_quotient() {
        let cfg = Config::default();
        let a = ideal("(x-1/2)^2");
        let b = ideal("(x-1/2)*(x-1/3)");
        assert_eq!(exact(&sum(&a, &b, &cfg).unwrap()), vec![(q(1, 2), 1)]);
        assert!(sum(&ideal("x"), &ideal("x-1"), &cfg).unwrap().is_unit());
        // several points of the second divisor absent from the first
        assert!(sum(&ideal("x - 1/2"), &ideal("x*(x-1/3)*(x-1)"), &cfg)
            .unwrap()
            .is_unit());
        assert!(same(&sum(&Ideal::Zero, &a, &cfg).unwrap(), &a));

        assert_eq!(
            exact(&product(&ideal("x"), &ideal("x"), &cfg).unwrap()),
            vec![(q(0, 1), 2)]
        );
        let p = product(&ideal("x"), &ideal("(x-1/2)^2"), &cfg).unwrap();
        let p = product(&p, &Ideal::unit(), &cfg).unwrap();
        assert_eq!(exact(&p), vec![(q(0, 1), 1), (q(1, 2), 2)]);
        assert!(product(&Ideal::Zero, &a, &cfg).unwrap().is_zero());

        assert_eq!(
            exact(&intersect(&a, &b, &cfg).unwrap()),
            vec![(q(1, 3), 1), (q(1, 2), 2)]
        );
        assert!(same(&intersect(&a, &Ideal::unit(), &cfg).unwrap(), &a));
        assert!(intersect(&a, &Ideal::Zero, &cfg).unwrap().is_zero());

        let c = ideal("x^2*(x-1)");
        assert_eq!(
            exact(&quotient(&c, &ideal("x"), &cfg).unwrap()),
            vec![(q(0, 1), 1), (q(1, 1), 1)]
        );
        assert!(same(&quotient(&c, &Ideal::unit(), &cfg).unwrap(), &c));
        assert!(quotient(&ideal("x"), &ideal("x^3"), &cfg)
            .unwrap()
            .is_unit());
        assert!(matches!(
            quotient(&c, &Ideal::Zero, &cfg),
            Err(IdealError::ZeroDivisorArgument)
        ));
    }

    #[test]
    fn irrational_points_align() {
        let cfg = Config::default();
        let a = ideal("x^2 - 1/2");
        let b = ideal("(x^2 - 1/2)*(x - 1/5)");
        let s = sum(&a, &b, &cfg).unwrap();
        assert!(same(&s, &a));
        let i = intersect(&a, &b, &cfg).unwrap();
        assert!(same(&i, &b));
        let e = ideal("exp(x) - 2");
        let both = product(&e, &e, &cfg).unwrap();
        assert_eq!(both.divisor().unwrap().entries()[0].1, 2);
        assert!(same(&both, &ideal("(exp(x) - 2)^2")));
    }

    #[test]
    fn primality() {
        assert!(is_maximal(&ideal("x - 1/3")));
        assert!(!is_maximal(&ideal("(x - 1/3)^2")));
        assert!(!is_maximal(&Ideal::unit()));
        assert!(is_prime(&Ideal::Zero));
        assert!(!is_prime(&ideal("x*(x-1)")));
        assert!(is_prime(&ideal("x - 1")));
        assert!(!is_maximal(&Ideal::Zero));
    }

    #[test]
    fn factorization_and_radical() {
        let f = factor_maximals(&ideal("x*(x-1/2)^2")).unwrap();
        assert_eq!(render_factors(&f), "M_0^1 · M_{1/2}^2");
        assert!(factor_maximals(&Ideal::unit()).unwrap().is_empty());
        assert_eq!(
            render_factors(&factor_maximals(&ideal("sin(pi*x)")).unwrap()),
            "M_0^1 · M_1^1"
        );
        assert!(matches!(
            factor_maximals(&Ideal::Zero),
            Err(IdealError::ZeroIdealNotFactorable)
        ));

        let r = radical(&ideal("x*(x-1/2)^2"));
        assert_eq!(exact(&r), vec![(q(0, 1), 1), (q(1, 2), 1)]);
        assert!(radical(&Ideal::unit()).is_unit());
        assert!(radical(&Ideal::Zero).is_zero());
        let m = ideal("x - 1/3");
        assert!(same(&radical(&m), &m));
    }

    #[test]
    fn canonical_generators() {
        let cfg = Config::default();
        let i = ideal("x*(x-1/2)^2");
        match canonical_generator(&i) {
            Generator::Expr(g) => {
                assert_eq!(g.to_string(), "x*(x - 1/2)^2");
                assert!(same(&from_generator(&g, &cfg).unwrap(), &i));
            }
            Generator::Unrepresentable(_) => panic!("all points rational"),
        }
        assert!(
            matches!(canonical_generator(&Ideal::unit()), Generator::Expr(g) if g.is_one_constant())
        );
        match canonical_generator(&ideal("exp(x) - 2")) {
            Generator::Unrepresentable(f) => {
                assert_eq!(f.len(), 1);
                let scale = BigInt::from(10_i64.pow(16));
                let below = BigRational::new(BigInt::from(6931471805599452_i64), scale.clone());
                let above = BigRational::new(BigInt::from(6931471805599454_i64), scale);
                assert!(f[0].point.within(&below, &above));
            }
            Generator::Expr(_) => panic!("ln 2 is irrational"),
        }
    }

    #[test]
    fn json_shapes() {
        assert_eq!(Ideal::Zero.to_json(), json!({"ideal": "zero"}));
        let v = ideal("x - 1/2").to_json();
        assert_eq!(v["ideal"], "principal");
        assert_eq!(v["generator"], "x - 1/2");
        assert_eq!(v["divisor"][0]["multiplicity"], 1);
        assert_eq!(v["divisor"][0]["point"]["value"], "1/2");
        assert_eq!(Ideal::unit().to_json()["generator"], Value::Null);
        let f = factors_json(&factor_maximals(&ideal("x^2")).unwrap());
        assert_eq!(f[0]["exponent"], 2);
    }
}
