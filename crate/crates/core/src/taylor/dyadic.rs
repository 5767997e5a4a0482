//! Arbitrary-precision dyadic rationals `m * 2^e` with directed rounding.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction for inexact operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// The exact value `mant * 2^exp`.
///
/// Values are kept normalized (odd mantissa, or `0 * 2^0`), so structural
/// equality coincides with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Dyadic {
        Dyadic {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_i64(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    /// `2^k`
    pub fn pow2(k: i64) -> Dyadic {
        Dyadic {
            mant: BigInt::one(),
            exp: k,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2 |self|)`, or `None` for zero.
    pub fn floor_log2(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 - 1 + self.exp)
        }
    }

    /// Multiply by `2^k` (exact).
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let mant = shift_round(&self.mant, shift, dir);
        Dyadic::new(mant, self.exp + shift as i64)
    }

    pub fn add_exact(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub_exact(&self, other: &Dyadic) -> Dyadic {
        self.add_exact(&-other)
    }

    pub fn mul_exact(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    pub fn add(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        self.add_exact(other).round(prec, dir)
    }

    pub fn sub(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        self.sub_exact(other).round(prec, dir)
    }

    pub fn mul(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        self.mul_exact(other).round(prec, dir)
    }

    /// Directed-rounded quotient. Panics on division by zero.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = prec as i64 + 2 + other.bits() as i64 - self.bits() as i64;
        let k = want.max(0) as u64;
        let num = &self.mant << k;
        let q = match dir {
            Round::Down => num.div_floor(&other.mant),
            Round::Up => -((-num).div_floor(&other.mant)),
        };
        Dyadic::new(q, self.exp - other.exp - k as i64).round(prec, dir)
    }

    /// Exact midpoint `(a + b) / 2`.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        a.add_exact(b).mul_pow2(-1)
    }

    pub fn from_bigint(v: BigInt) -> Dyadic {
        Dyadic::new(v, 0)
    }

    /// Directed rounding of a rational to `prec` significant bits.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
        let (n, d) = (q.numer(), q.denom());
        if n.is_zero() {
            return Dyadic::zero();
        }
        if let Some(dz) = d.trailing_zeros() {
            if (d >> dz).is_one() {
                return Dyadic::new(n.clone(), -(dz as i64)).round(prec, dir);
            }
        }
        // scale so the integer quotient carries at least prec + 2 bits
        let k = (prec as i64 + 2 + d.bits() as i64 - n.bits() as i64).max(0) as u64;
        let num = n << k;
        let quo = match dir {
            Round::Down => num.div_floor(d),
            Round::Up => -((-num).div_floor(d)),
        };
        Dyadic::new(quo, -(k as i64)).round(prec, dir)
    }

    /// Returns the exact rational value if it is dyadic, i.e. the denominator
    /// is a power of two.
    pub fn try_from_rational(q: &BigRational) -> Option<Dyadic> {
        let d = q.denom();
        let dz = d.trailing_zeros().unwrap_or(0);
        if (d >> dz).is_one() {
            Some(Dyadic::new(q.numer().clone(), -(dz as i64)))
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest-ish `f64`, for heuristics only (never for bounds).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = (&self.mant >> shift as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        // split the scale so that neither factor underflows on its own
        let half = e / 2;
        m * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    /// Exact conversion from a finite `f64`.
    pub fn from_f64(v: f64) -> Dyadic {
        assert!(v.is_finite());
        if v == 0.0 {
            return Dyadic::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    /// Decimal rendering with `digits` fractional digits, rounded in `dir`.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        let scaled =
            self.to_rational() * BigRational::from_integer(BigInt::from(10u32).pow(digits));
        let int = match dir {
            Round::Down => scaled.floor().to_integer(),
            Round::Up => scaled.ceil().to_integer(),
        };
        format_fixed(&int, digits)
    }
}

/// Renders `int / 10^digits` in fixed notation.
pub(crate) fn format_fixed(int: &BigInt, digits: u32) -> String {
    let neg = int.is_negative();
    let s = int.abs().to_string();
    let digits = digits as usize;
    let body = if digits == 0 {
        s
    } else if s.len() <= digits {
        format!("0.{}{}", "0".repeat(digits - s.len()), s)
    } else {
        let (a, b) = s.split_at(s.len() - digits);
        format!("{a}.{b}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn shift_round(m: &BigInt, shift: u64, dir: Round) -> BigInt {
    match dir {
        Round::Down => m >> shift,
        Round::Up => -((-m) >> shift),
    }
}

impl std::ops::Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl std::ops::Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes via leading-bit position first
        let la = self.floor_log2().unwrap();
        let lb = other.floor_log2().unwrap();
        if la != lb {
            let mag = la.cmp(&lb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        self.sub_exact(other).signum().cmp(&0)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{} (~{:e})", self.mant, self.exp, self.to_f64())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization_makes_equality_numeric() {
        assert_eq!(
            Dyadic::new(BigInt::from(4), -3),
            Dyadic::new(BigInt::from(1), -1)
        );
        assert_eq!(Dyadic::new(BigInt::from(0), 7), Dyadic::zero());
    }

    #[test]
    fn rational_rounding_brackets_value() {
        for (n, d) in [
            (1, 3),
            (-1, 3),
            (2, 7),
            (-22, 7),
            (1, 10),
            (123456789, 1000),
        ] {
            let v = q(n, d);
            let lo = Dyadic::from_rational(&v, 53, Round::Down);
            let hi = Dyadic::from_rational(&v, 53, Round::Up);
            assert!(lo.to_rational() <= v && v <= hi.to_rational());
            assert!(lo < hi);
            assert!(lo.bits() <= 53 && hi.bits() <= 53);
        }
        let exact = Dyadic::from_rational(&q(5, 4), 53, Round::Down);
        assert_eq!(exact.to_rational(), q(5, 4));
    }

    #[test]
    fn division_is_directed() {
        let a = Dyadic::from_i64(1);
        let b = Dyadic::from_i64(3);
        let lo = a.div(&b, 64, Round::Down);
        let hi = a.div(&b, 64, Round::Up);
        assert!(lo.to_rational() < q(1, 3) && q(1, 3) < hi.to_rational());
        let neg = (-&a).div(&b, 64, Round::Down);
        assert!(neg.to_rational() < q(-1, 3));
    }

    #[test]
    fn ordering_matches_rationals() {
        let vals = [q(-5, 2), q(-1, 4), q(0, 1), q(3, 8), q(1, 1), q(7, 2)];
        for a in &vals {
            for b in &vals {
                let da = Dyadic::try_from_rational(a).unwrap();
                let db = Dyadic::try_from_rational(b).unwrap();
                assert_eq!(da.cmp(&db), a.cmp(b));
            }
        }
    }

    #[test]
    fn decimal_rendering_is_outward() {
        let third_lo = Dyadic::from_rational(&q(1, 3), 80, Round::Down);
        assert_eq!(third_lo.to_decimal(5, Round::Down), "0.33333");
        assert_eq!(third_lo.to_decimal(5, Round::Up), "0.33334");
        assert_eq!(Dyadic::from_i64(-2).to_decimal(2, Round::Down), "-2.00");
    }

    #[test]
    fn f64_round_trip() {
        for v in [0.5, -3.25, 1e-300, 6.02e23] {
            assert_eq!(Dyadic::from_f64(v).to_f64(), v);
        }
    }
}
