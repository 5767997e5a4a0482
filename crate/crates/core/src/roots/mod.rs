//! Certified zero isolation on `[0, 1]` with multiplicities.
//!
//! A zero is reported either as an exact rational (verified by exact
//! substitution) or as a narrow enclosure carrying a certificate: the
//! function it belongs to and an order `m` such that the `m`-th derivative
//! is bounded away from 0 on the enclosure while the zero has multiplicity
//! `m`. By Rolle's theorem that makes it the only zero in the enclosure.

mod identify;
mod isolate;
pub mod poly;

pub use identify::identify;

use crate::expr::{normalize, Expr};
use crate::rational::{exact_string, to_decimal};
use crate::taylor::{self, Dyadic, Interval};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Knobs shared by every certified operation.
#[derive(Debug, Clone)]
pub struct Config {
    /// First rung of the precision ladder, in bits.
    pub precision: u32,
    /// Last rung of the precision ladder, in bits.
    pub max_precision: u32,
    /// Maximum width of a reported enclosure.
    pub tolerance: Dyadic,
    /// Largest multiplicity that will be certified.
    pub mult_cap: u32,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            precision: 53,
            max_precision: 1024,
            tolerance: Dyadic::pow2(-53),
            mult_cap: 16,
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum RootsError {
    #[error("not analytic on [0,1]: a denominator may vanish on {witness}")]
    NotAnalytic { witness: Interval },
    #[error("undecidable on {interval}: {reason}")]
    Undecidable { interval: Interval, reason: String },
    #[error("target width is below the precision cap")]
    PrecisionExhausted,
    #[error("cannot decide whether {a} and {b} are the same point")]
    PointIdentityUndecidable { a: Box<Point>, b: Box<Point> },
}

/// An isolated zero whose location is only known to lie in `interval`.
#[derive(Debug, Clone)]
pub struct Enclosure {
    pub interval: Interval,
    /// The function this is a zero of (normalized).
    pub source: Arc<Expr>,
    /// Multiplicity of the zero as a zero of `source`; `source^(order)`
    /// excludes 0 on `interval`.
    pub order: u32,
}

#[derive(Debug, Clone)]
pub enum Point {
    Exact(BigRational),
    Enclosure(Enclosure),
}

impl Point {
    pub fn lo(&self) -> BigRational {
        match self {
            Point::Exact(q) => q.clone(),
            Point::Enclosure(e) => e.interval.lo().to_rational(),
        }
    }

    pub fn hi(&self) -> BigRational {
        match self {
            Point::Exact(q) => q.clone(),
            Point::Enclosure(e) => e.interval.hi().to_rational(),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Point::Exact(q) => Some(q),
            Point::Enclosure(_) => None,
        }
    }

    /// Whether the point certainly lies in the closed `[lo, hi]`.
    pub fn within(&self, lo: &BigRational, hi: &BigRational) -> bool {
        &self.lo() >= lo && &self.hi() <= hi
    }

    pub fn to_json(&self) -> Value {
        match self {
            Point::Exact(q) => json!({"kind": "rational", "value": exact_string(q)}),
            Point::Enclosure(e) => {
                let (lo, hi) = e.interval.to_rational_bounds();
                let width = &hi - &lo;
                json!({
                    "kind": "enclosure",
                    "lo": to_decimal(&lo, DIGITS, false),
                    "hi": to_decimal(&hi, DIGITS, true),
                    "width": to_decimal(&width, DIGITS, true),
                    "lo_exact": exact_string(&lo),
                    "hi_exact": exact_string(&hi),
                })
            }
        }
    }
}

/// Fractional digits used when printing enclosures.
pub const DIGITS: u32 = 25;

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Exact(q) => write!(f, "{}", exact_string(q)),
            Point::Enclosure(e) => {
                let (lo, hi) = e.interval.to_rational_bounds();
                write!(
                    f,
                    "[{}, {}]",
                    to_decimal(&lo, 20, false),
                    to_decimal(&hi, 20, true)
                )
            }
        }
    }
}

/// The finite zero multiset of a nonzero analytic function on `[0, 1]`.
#[derive(Debug, Clone, Default)]
pub struct Divisor {
    entries: Vec<(Point, u32)>,
}

impl Divisor {
    /// Sorts by lower endpoint. Callers guarantee disjointness.
    pub fn new(mut entries: Vec<(Point, u32)>) -> Divisor {
        entries.retain(|(_, m)| *m > 0);
        entries.sort_by(|a, b| cmp_points(&a.0, &b.0));
        Divisor { entries }
    }

    pub fn empty() -> Divisor {
        Divisor::default()
    }

    pub fn entries(&self) -> &[(Point, u32)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of multiplicities.
    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|(p, m)| json!({"point": p.to_json(), "multiplicity": m}))
                .collect(),
        )
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, m)| format!("({p}, {m})"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn cmp_points(a: &Point, b: &Point) -> Ordering {
    a.lo().cmp(&b.lo()).then_with(|| a.hi().cmp(&b.hi()))
}

/// Outcome of zero isolation.
#[derive(Debug, Clone)]
pub enum Zeros {
    Divisor(Divisor),
    /// The expression normalizes to the constant 0.
    ZeroFunction,
}

fn normalized(f: &Expr) -> Result<Expr, RootsError> {
    normalize(f).map_err(|_| RootsError::NotAnalytic {
        witness: Interval::unit(),
    })
}

/// Every denominator must be zero-free on `[0, 1]`; checked innermost first.
pub fn check_analytic(f: &Expr, cfg: &Config) -> Result<(), RootsError> {
    let f = normalized(f)?;
    for d in f.denominators() {
        if d.is_zero_constant() {
            return Err(RootsError::NotAnalytic {
                witness: Interval::unit(),
            });
        }
        match isolate::isolate_checked(d, &Interval::unit(), cfg) {
            Ok(found) if found.is_empty() => {}
            Ok(found) => {
                let witness = match &found[0].0 {
                    Point::Exact(q) => Interval::from_rational(q, cfg.max_precision),
                    Point::Enclosure(e) => e.interval.clone(),
                };
                return Err(RootsError::NotAnalytic { witness });
            }
            Err(RootsError::Undecidable { interval, .. }) => {
                return Err(RootsError::NotAnalytic { witness: interval });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

/// Complete divisor of `f` on `[0, 1]`, the zero-function verdict, or an error.
pub fn isolate_zeros(f: &Expr, cfg: &Config) -> Result<Zeros, RootsError> {
    let g = normalized(f)?;
    if g.is_zero_constant() {
        return Ok(Zeros::ZeroFunction);
    }
    check_analytic(&g, cfg)?;
    let entries = isolate::isolate_checked(&g, &Interval::unit(), cfg)?;
    Ok(Zeros::Divisor(Divisor::new(entries)))
}

/// Multiplicity of the single zero of `f` inside `candidate`, with its
/// certified point.
pub fn multiplicity(
    f: &Expr,
    candidate: &Interval,
    cfg: &Config,
) -> Result<(u32, Point), RootsError> {
    let g = normalized(f)?;
    if g.is_zero_constant() {
        return Err(RootsError::Undecidable {
            interval: candidate.clone(),
            reason: "the zero function has no multiplicity".into(),
        });
    }
    let found = isolate::isolate_checked(&g, candidate, cfg)?;
    match found.len() {
        1 => {
            let (p, m) = found.into_iter().next().unwrap();
            Ok((m, p))
        }
        n => Err(RootsError::Undecidable {
            interval: candidate.clone(),
            reason: format!("candidate holds {n} distinct zeros"),
        }),
    }
}

/// Narrow an enclosure to width at most `target`. Exact points are returned
/// unchanged; the enclosure's own certificate names the function.
pub fn refine(p: &Point, target: &Dyadic, cfg: &Config) -> Result<Point, RootsError> {
    let Point::Enclosure(e) = p else {
        return Ok(p.clone());
    };
    if target < &Dyadic::pow2(-(cfg.max_precision as i64)) || !target.is_positive() {
        return Err(RootsError::PrecisionExhausted);
    }
    if &e.interval.width() <= target {
        return Ok(p.clone());
    }
    let mut last = None;
    for prec in taylor::ladder(cfg.precision, cfg.max_precision) {
        match isolate::refine_enclosure(e, target, prec, cfg) {
            Ok(p) => return Ok(p),
            Err(f) => last = Some(f),
        }
    }
    Err(RootsError::Undecidable {
        interval: last
            .map(|f| f.interval)
            .unwrap_or_else(|| e.interval.clone()),
        reason: "refinement could not decide a sign".into(),
    })
}

/// Exact-lane Taylor coefficients at `q`, with `f(q)` set to an exact 0
/// when substituting `q` leaves a difference of two identical closed
/// terms, as in `g(x) - g(q)`.
pub(crate) fn exact_coeffs(
    f: &Expr,
    q: &BigRational,
    n: usize,
    prec: u32,
) -> Result<Vec<taylor::Scalar>, taylor::TaylorError> {
    let mut c = taylor::taylor_coeffs_exact(f, q, n, prec)?;
    if c[0].sign(prec).is_none() && cancels_at(f, q) {
        c[0] = taylor::Scalar::rational(BigRational::from_integer(0.into()));
    }
    Ok(c)
}

fn cancels_at(f: &Expr, q: &BigRational) -> bool {
    match normalize(&f.substitute(&Expr::Const(q.clone()))) {
        Ok(Expr::Sub(a, b)) => a == b,
        _ => false,
    }
}

/// Exact-substitution test that `q` is a zero of `f` of multiplicity at
/// least `m`: `Some(true)` certified, `Some(false)` refuted, `None` unknown.
pub fn vanishes_to_order(f: &Expr, q: &BigRational, m: u32, prec: u32) -> Option<bool> {
    let c = exact_coeffs(f, q, m.saturating_sub(1) as usize, prec).ok()?;
    let mut all = true;
    for v in c.iter().take(m as usize) {
        match v.sign(prec) {
            Some(0) => {}
            Some(_) => return Some(false),
            None => all = false,
        }
    }
    if all {
        Some(true)
    } else {
        None
    }
}

/// Decimal outward-rounded bounds of an interval plus its width.
pub fn interval_json(i: &Interval) -> Value {
    let (lo, hi) = i.to_rational_bounds();
    let mut v = json!({
        "lo": to_decimal(&lo, DIGITS, false),
        "hi": to_decimal(&hi, DIGITS, true),
        "width": to_decimal(&(&hi - &lo), DIGITS, true),
    });
    if lo == hi {
        v["exact"] = json!(exact_string(&lo));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn divisor(s: &str) -> Divisor {
        match isolate_zeros(&parse(s).unwrap(), &Config::default()).unwrap() {
            Zeros::Divisor(d) => d,
            Zeros::ZeroFunction => panic!("{s} reported as the zero function"),
        }
    }

    fn exact(d: &Divisor) -> Vec<(BigRational, u32)> {
        d.entries()
            .iter()
            .map(|(p, m)| (p.as_exact().cloned().expect("exact point"), *m))
            .collect()
    }

    #[test]
    fn closed_differences_vanish_exactly() {
        let f = parse("exp(x) - exp(1)").unwrap();
        assert_eq!(vanishes_to_order(&f, &q(1, 1), 1, 128), Some(true));
        assert_eq!(vanishes_to_order(&f, &q(1, 1), 2, 128), Some(false));
        assert_eq!(exact(&divisor("exp(x) - exp(1)")), vec![(q(1, 1), 1)]);
        assert_eq!(exact(&divisor("sin(x) - sin(1/3)")), vec![(q(1, 3), 1)]);
    }

    #[test]
    fn planted_rational_roots() {
        assert_eq!(
            exact(&divisor("(x-1/2)^2*(x-1/4)")),
            vec![(q(1, 4), 1), (q(1, 2), 2)]
        );
        assert_eq!(
            exact(&divisor("x*(x-1/2)^2")),
            vec![(q(0, 1), 1), (q(1, 2), 2)]
        );
        assert_eq!(exact(&divisor("x - 1/3")), vec![(q(1, 3), 1)]);
        assert_eq!(
            exact(&divisor("(3*x-1)^3*(x-1)^2")),
            vec![(q(1, 3), 3), (q(1, 1), 2)]
        );
    }

    #[test]
    fn sine_has_simple_endpoint_zeros() {
        assert_eq!(
            exact(&divisor("sin(pi*x)")),
            vec![(q(0, 1), 1), (q(1, 1), 1)]
        );
    }

    #[test]
    fn exponential_root_is_ln_two() {
        let d = divisor("exp(x) - 2");
        assert_eq!(d.len(), 1);
        let (p, m) = &d.entries()[0];
        assert_eq!(*m, 1);
        let (lo, hi) = (p.lo(), p.hi());
        assert!(&hi - &lo <= q(1, 1 << 53));
        // ln 2 = 0.693147180559945309...
        assert!(lo > q(693147180559, 1_000_000_000_000) && hi < q(693147180560, 1_000_000_000_000));
    }

    #[test]
    fn zero_free_functions() {
        assert!(divisor("exp(x)").is_empty());
        assert!(divisor("7").is_empty());
        assert!(divisor("x^2 + 1").is_empty());
    }

    #[test]
    fn irrational_roots_get_enclosures() {
        let d = divisor("x^2 - 1/2");
        assert_eq!(d.len(), 1);
        let (p, m) = &d.entries()[0];
        assert_eq!(*m, 1);
        assert!(matches!(p, Point::Enclosure(_)));
        let d = divisor("(x^2 - 1/2)^2*(x - 1/5)");
        assert_eq!(
            d.entries().iter().map(|e| e.1).collect::<Vec<_>>(),
            vec![1, 2]
        );
    }

    #[test]
    fn zero_function_is_structural() {
        let cfg = Config::default();
        assert!(matches!(
            isolate_zeros(&parse("0*exp(x)").unwrap(), &cfg),
            Ok(Zeros::ZeroFunction)
        ));
        assert!(matches!(
            isolate_zeros(&parse("sin(x)^2 + cos(x)^2 - 1").unwrap(), &cfg),
            Err(RootsError::Undecidable { .. })
        ));
    }

    #[test]
    fn analyticity_checks() {
        let cfg = Config::default();
        assert!(check_analytic(&parse("1/(x+1)").unwrap(), &cfg).is_ok());
        assert!(check_analytic(&parse("(x-1/2)/(x^2+1)").unwrap(), &cfg).is_ok());
        match check_analytic(&parse("1/(x-1/2)").unwrap(), &cfg) {
            Err(RootsError::NotAnalytic { witness }) => {
                assert!(witness.contains_rational(&q(1, 2)))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn multiplicity_examples() {
        let cfg = Config::default();
        let around_half = Interval::from_rational_bounds(&q(2, 5), &q(3, 5), 64);
        assert_eq!(
            multiplicity(&parse("(x-1/2)^2").unwrap(), &around_half, &cfg)
                .unwrap()
                .0,
            2
        );
        assert_eq!(
            multiplicity(&parse("(x-1/2)^3*exp(x)").unwrap(), &around_half, &cfg)
                .unwrap()
                .0,
            3
        );
        let around_third = Interval::from_rational_bounds(&q(1, 4), &q(2, 5), 64);
        assert_eq!(
            multiplicity(&parse("x - 1/3").unwrap(), &around_third, &cfg)
                .unwrap()
                .0,
            1
        );
    }

    #[test]
    fn refinement() {
        let cfg = Config::default();
        let e = Point::Enclosure(Enclosure {
            interval: Interval::from_rational_bounds(&q(49, 100), &q(51, 100), 64),
            source: Arc::new(parse("(x-1/2)^2").unwrap()),
            order: 2,
        });
        let r = refine(&e, &Dyadic::pow2(-20), &cfg).unwrap();
        assert!(r.within(&q(49, 100), &q(51, 100)));
        assert!(r.lo() <= q(1, 2) && q(1, 2) <= r.hi());
        assert!(r.hi() - r.lo() <= q(1, 1 << 20));
        let third = Point::Exact(q(1, 3));
        assert!(
            matches!(refine(&third, &Dyadic::pow2(-60), &cfg).unwrap(), Point::Exact(v) if v == q(1, 3))
        );
        assert!(matches!(
            refine(&e, &Dyadic::pow2(-2000), &cfg),
            Err(RootsError::PrecisionExhausted)
        ));
    }
}
