//! Closed intervals with dyadic endpoints and outward rounding.

use super::dyadic::{Dyadic, Round};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

/// `[lo, hi]` with `lo <= hi`. Every operation returns an enclosure of the
/// exact real result for all members of its operands.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Interval {
        assert!(lo <= hi, "interval endpoints out of order: {lo:?} > {hi:?}");
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Interval {
        Interval {
            lo: d.clone(),
            hi: d,
        }
    }

    pub fn zero() -> Interval {
        Interval::point(Dyadic::zero())
    }

    pub fn one() -> Interval {
        Interval::point(Dyadic::one())
    }

    pub fn from_i64(v: i64) -> Interval {
        Interval::point(Dyadic::from_i64(v))
    }

    /// `[0, 1]`
    pub fn unit() -> Interval {
        Interval::new(Dyadic::zero(), Dyadic::one())
    }

    /// `[-r, r]`
    pub fn symmetric(r: Dyadic) -> Interval {
        let r = r.abs();
        Interval::new(-&r, r)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Interval {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
        }
    }

    pub fn from_rational_bounds(lo: &BigRational, hi: &BigRational, prec: u32) -> Interval {
        Interval::new(
            Dyadic::from_rational(lo, prec, Round::Down),
            Dyadic::from_rational(hi, prec, Round::Up),
        )
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn excludes_zero(&self) -> bool {
        !self.contains_zero()
    }

    /// `Some(1)`/`Some(-1)` when the sign is certain, `Some(0)` for the exact
    /// zero interval, `None` when zero is a member but not the only one.
    pub fn strict_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.is_exact_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = if self.lo >= other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi <= other.hi {
            &self.hi
        } else {
            &other.hi
        };
        if lo <= hi {
            Some(Interval::new(lo.clone(), hi.clone()))
        } else {
            None
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        let lo = if self.lo <= other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi >= other.hi {
            &self.hi
        } else {
            &other.hi
        };
        Interval::new(lo.clone(), hi.clone())
    }

    /// Exact width `hi - lo`.
    pub fn width(&self) -> Dyadic {
        self.hi.sub_exact(&self.lo)
    }

    /// Exact midpoint.
    pub fn mid(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    /// `max(|lo|, |hi|)`
    pub fn mag(&self) -> Dyadic {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a >= b {
            a
        } else {
            b
        }
    }

    /// Outward rounding of both endpoints to `prec` bits.
    pub fn round(&self, prec: u32) -> Interval {
        Interval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.add(&other.lo, prec, Round::Down),
            hi: self.hi.add(&other.hi, prec, Round::Up),
        }
    }

    pub fn sub(&self, other: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.sub(&other.hi, prec, Round::Down),
            hi: self.hi.sub(&other.lo, prec, Round::Up),
        }
    }

    pub fn mul(&self, other: &Interval, prec: u32) -> Interval {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Interval::zero();
        }
        if !self.lo.is_negative() && !other.lo.is_negative() {
            return Interval {
                lo: self.lo.mul(&other.lo, prec, Round::Down),
                hi: self.hi.mul(&other.hi, prec, Round::Up),
            };
        }
        let products = [
            self.lo.mul_exact(&other.lo),
            self.lo.mul_exact(&other.hi),
            self.hi.mul_exact(&other.lo),
            self.hi.mul_exact(&other.hi),
        ];
        let lo = products.iter().min().unwrap().round(prec, Round::Down);
        let hi = products.iter().max().unwrap().round(prec, Round::Up);
        Interval { lo, hi }
    }

    pub fn mul_dyadic(&self, d: &Dyadic, prec: u32) -> Interval {
        self.mul(&Interval::point(d.clone()), prec)
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    /// Quotient; `None` if the divisor contains zero.
    pub fn div(&self, other: &Interval, prec: u32) -> Option<Interval> {
        if other.contains_zero() {
            return None;
        }
        if self.is_exact_zero() {
            return Some(Interval::zero());
        }
        let ends = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = ends
            .iter()
            .map(|(a, b)| a.div(b, prec, Round::Down))
            .min()
            .unwrap();
        let hi = ends
            .iter()
            .map(|(a, b)| a.div(b, prec, Round::Up))
            .max()
            .unwrap();
        Some(Interval { lo, hi })
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, n: i64, prec: u32) -> Interval {
        assert!(n != 0);
        self.div(&Interval::from_i64(n), prec)
            .expect("nonzero integer divisor")
    }

    pub fn sqr(&self, prec: u32) -> Interval {
        self.powi(2, prec)
    }

    /// Integer power with the tight enclosure for even exponents.
    pub fn powi(&self, n: u32, prec: u32) -> Interval {
        if n == 0 {
            return Interval::one();
        }
        if n == 1 {
            return self.clone();
        }
        let pow_dir = |d: &Dyadic, dir: Round| -> Dyadic {
            // |d|^n rounded in dir, then signed
            let mag = d.abs();
            let neg = d.is_negative() && n % 2 == 1;
            let eff = if neg { dir.flip() } else { dir };
            let mut acc = Dyadic::one();
            for _ in 0..n {
                acc = acc.mul(&mag, prec, eff);
            }
            if neg {
                -acc
            } else {
                acc
            }
        };
        if n % 2 == 1 || !self.lo.is_negative() {
            Interval {
                lo: pow_dir(&self.lo, Round::Down),
                hi: pow_dir(&self.hi, Round::Up),
            }
        } else if !self.hi.is_positive() {
            Interval {
                lo: pow_dir(&self.hi, Round::Down),
                hi: pow_dir(&self.lo, Round::Up),
            }
        } else {
            Interval {
                lo: Dyadic::zero(),
                hi: pow_dir(&self.mag(), Round::Up),
            }
        }
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Interval::new(Dyadic::zero(), self.mag())
        }
    }

    /// Smallest interval containing both `self` and `0`.
    pub fn hull_zero(&self) -> Interval {
        self.hull(&Interval::zero())
    }

    pub fn to_rational_bounds(&self) -> (BigRational, BigRational) {
        (self.lo.to_rational(), self.hi.to_rational())
    }

    /// Bisect at the exact midpoint.
    pub fn split(&self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval::new(self.lo.clone(), m.clone()),
            Interval::new(m, self.hi.clone()),
        )
    }

    pub fn from_integer_bounds(lo: i64, hi: i64) -> Interval {
        Interval::new(
            Dyadic::from_bigint(BigInt::from(lo)),
            Dyadic::from_bigint(BigInt::from(hi)),
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(Dyadic::from_f64(lo), Dyadic::from_f64(hi))
    }

    #[test]
    fn multiplication_covers_sign_cases() {
        let a = iv(-2.0, 3.0);
        let b = iv(-1.0, 4.0);
        let p = a.mul(&b, 53);
        assert_eq!(p, iv(-8.0, 12.0));
        assert_eq!(iv(-3.0, -2.0).mul(&iv(-5.0, -4.0), 53), iv(8.0, 15.0));
    }

    #[test]
    fn even_power_of_straddling_interval_starts_at_zero() {
        assert_eq!(iv(-2.0, 1.0).powi(2, 53), iv(0.0, 4.0));
        assert_eq!(iv(-2.0, 1.0).powi(3, 53), iv(-8.0, 1.0));
        assert_eq!(iv(-3.0, -1.0).powi(2, 53), iv(1.0, 9.0));
    }

    #[test]
    fn division_requires_zero_free_divisor() {
        assert!(iv(1.0, 2.0).div(&iv(-1.0, 1.0), 53).is_none());
        let q = iv(1.0, 1.0).div(&iv(3.0, 3.0), 53).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        assert!(q.contains_rational(&third));
        assert!(!q.is_point());
    }

    #[test]
    fn strict_sign_classification() {
        assert_eq!(iv(0.5, 1.0).strict_sign(), Some(1));
        assert_eq!(iv(-1.0, -0.5).strict_sign(), Some(-1));
        assert_eq!(Interval::zero().strict_sign(), Some(0));
        assert_eq!(iv(-1.0, 0.0).strict_sign(), None);
    }
}
