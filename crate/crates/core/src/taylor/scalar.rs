//! Coefficient types for the Taylor recurrences.
//!
//! [`Scalar`] keeps values exact while they stay inside `Q + Q*pi` and falls
//! back to an [`Interval`] otherwise. Exactness is what lets a rational point
//! be certified as a zero: an interval can never prove that a value is 0.

use super::dyadic::Dyadic;
use super::elementary;
use super::interval::Interval;
use crate::expr::Func;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field-like operations needed by the series engine.
pub trait Coef: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &BigRational, prec: u32) -> Self;
    fn pi(prec: u32) -> Self;
    fn add(&self, other: &Self, prec: u32) -> Self;
    fn sub(&self, other: &Self, prec: u32) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self, prec: u32) -> Self;
    /// `None` when the divisor may be zero.
    fn div(&self, other: &Self, prec: u32) -> Option<Self>;
    /// Multiply by the rational `num/den`.
    fn scale(&self, num: i64, den: i64, prec: u32) -> Self;
    fn apply(&self, f: Func, prec: u32) -> Self;
    fn is_exact_zero(&self) -> bool;
    fn enclosure(&self, prec: u32) -> Interval;
}

impl Coef for Interval {
    fn zero() -> Self {
        Interval::zero()
    }
    fn one() -> Self {
        Interval::one()
    }
    fn from_rational(q: &BigRational, prec: u32) -> Self {
        Interval::from_rational(q, prec)
    }
    fn pi(prec: u32) -> Self {
        elementary::pi(prec)
    }
    fn add(&self, other: &Self, prec: u32) -> Self {
        Interval::add(self, other, prec)
    }
    fn sub(&self, other: &Self, prec: u32) -> Self {
        Interval::sub(self, other, prec)
    }
    fn neg(&self) -> Self {
        Interval::neg(self)
    }
    fn mul(&self, other: &Self, prec: u32) -> Self {
        Interval::mul(self, other, prec)
    }
    fn div(&self, other: &Self, prec: u32) -> Option<Self> {
        Interval::div(self, other, prec)
    }
    fn scale(&self, num: i64, den: i64, prec: u32) -> Self {
        let v = if num == 1 {
            self.clone()
        } else {
            Interval::mul(self, &Interval::from_i64(num), prec)
        };
        if den == 1 {
            v
        } else {
            v.div_int(den, prec)
        }
    }
    fn apply(&self, f: Func, prec: u32) -> Self {
        match f {
            Func::Exp => elementary::exp(self, prec),
            Func::Sin => elementary::sin(self, prec),
            Func::Cos => elementary::cos(self, prec),
            Func::Sinh => elementary::sinh(self, prec),
            Func::Cosh => elementary::cosh(self, prec),
        }
    }
    fn is_exact_zero(&self) -> bool {
        Interval::is_exact_zero(self)
    }
    fn enclosure(&self, _prec: u32) -> Interval {
        self.clone()
    }
}

/// An exact element `rat + pi_coeff * pi` of `Q + Q*pi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPi {
    pub rat: BigRational,
    pub pi_coeff: BigRational,
}

impl QPi {
    pub fn rational(q: BigRational) -> QPi {
        QPi {
            rat: q,
            pi_coeff: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.pi_coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.pi_coeff.is_zero() {
            Some(&self.rat)
        } else {
            None
        }
    }

    pub fn enclosure(&self, prec: u32) -> Interval {
        let r = Interval::from_rational(&self.rat, prec);
        if self.pi_coeff.is_zero() {
            return r;
        }
        let w = prec + 8;
        let p = elementary::pi(w).mul(&Interval::from_rational(&self.pi_coeff, w), w);
        r.add(&p, w).round(prec)
    }
}

impl std::fmt::Display for QPi {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::rational::exact_string;
        let c = &self.pi_coeff;
        let pi_term = |c: &BigRational| {
            if c.is_one() {
                "pi".to_string()
            } else {
                format!("{}*pi", exact_string(c))
            }
        };
        match (self.rat.is_zero(), c.is_zero()) {
            (_, true) => write!(f, "{}", exact_string(&self.rat)),
            (true, false) if c.is_negative() => write!(f, "-{}", pi_term(&-c)),
            (true, false) => write!(f, "{}", pi_term(c)),
            (false, false) if c.is_negative() => {
                write!(f, "{} - {}", exact_string(&self.rat), pi_term(&-c))
            }
            (false, false) => write!(f, "{} + {}", exact_string(&self.rat), pi_term(c)),
        }
    }
}

/// Exact value when known, otherwise a rigorous enclosure.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(QPi),
    Approx(Interval),
}

impl Scalar {
    pub fn rational(q: BigRational) -> Scalar {
        Scalar::Exact(QPi::rational(q))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) => q.as_rational(),
            Scalar::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Certified sign: `Some(0)` only for an exact zero.
    pub fn sign(&self, prec: u32) -> Option<i32> {
        match self {
            Scalar::Exact(q) => {
                if q.pi_coeff.is_zero() {
                    return Some(match q.rat.signum().to_i32().unwrap() {
                        s if s > 0 => 1,
                        s if s < 0 => -1,
                        _ => 0,
                    });
                }
                // r + p*pi with p != 0 is irrational, so enough bits decide it
                let mut p = prec.max(64);
                loop {
                    if let Some(s) = q.enclosure(p).strict_sign() {
                        return Some(s);
                    }
                    p *= 2;
                    if p > 1 << 16 {
                        return None;
                    }
                }
            }
            Scalar::Approx(i) => match i.strict_sign() {
                Some(0) => Some(0),
                s => s,
            },
        }
    }

    fn exact_func(f: Func, arg: &QPi) -> Option<QPi> {
        if arg.is_zero() {
            return Some(QPi::rational(f.value_at_zero()));
        }
        if !arg.rat.is_zero() {
            return None;
        }
        // sin and cos at multiples of pi/6
        let sixths = &arg.pi_coeff * BigRational::from_integer(BigInt::from(6));
        if !sixths.is_integer() {
            return None;
        }
        let k = sixths.to_integer();
        let k = (k % BigInt::from(12) + BigInt::from(12)) % BigInt::from(12);
        let k = k.to_usize().unwrap();
        let k = match f {
            Func::Sin => k,
            Func::Cos => (k + 3) % 12,
            _ => return None,
        };
        let half = BigRational::new(1.into(), 2.into());
        let one = BigRational::one();
        let v = match k {
            0 | 6 => BigRational::zero(),
            1 | 5 => half,
            3 => one,
            7 | 11 => -half,
            9 => -one,
            _ => return None,
        };
        Some(QPi::rational(v))
    }
}

impl Coef for Scalar {
    fn zero() -> Self {
        Scalar::rational(BigRational::zero())
    }
    fn one() -> Self {
        Scalar::rational(BigRational::one())
    }
    fn from_rational(q: &BigRational, _prec: u32) -> Self {
        Scalar::rational(q.clone())
    }
    fn pi(_prec: u32) -> Self {
        Scalar::Exact(QPi {
            rat: BigRational::zero(),
            pi_coeff: BigRational::one(),
        })
    }
    fn add(&self, other: &Self, prec: u32) -> Self {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(QPi {
                rat: &a.rat + &b.rat,
                pi_coeff: &a.pi_coeff + &b.pi_coeff,
            }),
            (Scalar::Exact(a), _) if a.is_zero() => other.clone(),
            (_, Scalar::Exact(b)) if b.is_zero() => self.clone(),
            _ => Scalar::Approx(self.enclosure(prec).add(&other.enclosure(prec), prec)),
        }
    }
    fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }
    fn neg(&self) -> Self {
        match self {
            Scalar::Exact(a) => Scalar::Exact(QPi {
                rat: -&a.rat,
                pi_coeff: -&a.pi_coeff,
            }),
            Scalar::Approx(i) => Scalar::Approx(i.neg()),
        }
    }
    fn mul(&self, other: &Self, prec: u32) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Coef::zero();
        }
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, other) {
            if let Some(q) = a.as_rational() {
                return Scalar::Exact(QPi {
                    rat: q * &b.rat,
                    pi_coeff: q * &b.pi_coeff,
                });
            }
            if let Some(q) = b.as_rational() {
                return Scalar::Exact(QPi {
                    rat: q * &a.rat,
                    pi_coeff: q * &a.pi_coeff,
                });
            }
        }
        Scalar::Approx(self.enclosure(prec).mul(&other.enclosure(prec), prec))
    }
    fn div(&self, other: &Self, prec: u32) -> Option<Self> {
        if let Scalar::Exact(b) = other {
            if let Some(q) = b.as_rational() {
                if q.is_zero() {
                    return None;
                }
                if let Scalar::Exact(a) = self {
                    return Some(Scalar::Exact(QPi {
                        rat: &a.rat / q,
                        pi_coeff: &a.pi_coeff / q,
                    }));
                }
            }
        }
        let d = other.enclosure(prec);
        if self.is_exact_zero() && d.excludes_zero() {
            return Some(Coef::zero());
        }
        self.enclosure(prec).div(&d, prec).map(Scalar::Approx)
    }
    fn scale(&self, num: i64, den: i64, prec: u32) -> Self {
        let q = BigRational::new(num.into(), den.into());
        self.mul(&Scalar::rational(q), prec)
    }
    fn apply(&self, f: Func, prec: u32) -> Self {
        if let Scalar::Exact(a) = self {
            if let Some(v) = Scalar::exact_func(f, a) {
                return Scalar::Exact(v);
            }
        }
        Scalar::Approx(self.enclosure(prec).apply(f, prec))
    }
    fn is_exact_zero(&self) -> bool {
        match self {
            Scalar::Exact(a) => a.is_zero(),
            Scalar::Approx(_) => false,
        }
    }
    fn enclosure(&self, prec: u32) -> Interval {
        match self {
            Scalar::Exact(a) => a.enclosure(prec),
            Scalar::Approx(i) => i.clone(),
        }
    }
}

/// Exact dyadic as a scalar.
pub fn dyadic_scalar(d: &Dyadic) -> Scalar {
    Scalar::rational(d.to_rational())
}
