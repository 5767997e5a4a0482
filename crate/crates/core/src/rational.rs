//! Small helpers on exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The rational with the smallest denominator in the open interval `(a, b)`
/// (`b = None` means unbounded). Requires `a >= 0` and `a < b`.
pub fn simplest_between(a: &BigRational, b: Option<&BigRational>) -> BigRational {
    let fl = a.floor();
    let n = &fl + BigRational::one();
    match b {
        None => return n,
        Some(b) if &n < b => return n,
        _ => {}
    }
    let b = b.unwrap();
    let a1 = a - &fl;
    let b1 = b - &fl;
    let hi = if a1.is_zero() { None } else { Some(a1.recip()) };
    let inv = simplest_between(&b1.recip(), hi.as_ref());
    fl + inv.recip()
}

/// Smallest-denominator rational in the closed interval `[a, b]`, `0 <= a <= b`.
pub fn simplest_in(a: &BigRational, b: &BigRational) -> BigRational {
    if a == b || a.is_integer() {
        return a.clone();
    }
    if b.is_integer() {
        return b.clone();
    }
    simplest_between(a, Some(b))
}

/// Decimal string of `q` with `digits` fractional digits, rounded toward
/// `-inf` when `up` is false and toward `+inf` otherwise.
pub fn to_decimal(q: &BigRational, digits: u32, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = q * BigRational::from_integer(scale);
    let int = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = int.is_negative();
    let (whole, frac) = int.abs().div_rem(&BigInt::from(10u32).pow(digits));
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!(
            "{sign}{whole}.{:0>width$}",
            frac.to_string(),
            width = digits as usize
        )
    }
}

/// `n/d` or `n` in lowest terms.
pub fn exact_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_in(&q(3, 10), &q(4, 10)), q(1, 3));
        assert_eq!(simplest_in(&q(0, 1), &q(1, 10)), q(0, 1));
        assert_eq!(simplest_between(&q(0, 1), Some(&q(1, 10))), q(1, 11));
        assert_eq!(
            simplest_in(&q(7071, 10000), &q(7072, 10000)),
            simplest_between(&q(7071, 10000), Some(&q(7072, 10000)))
        );
        assert_eq!(simplest_in(&q(49, 100), &q(51, 100)), q(1, 2));
        assert_eq!(simplest_between(&q(2, 3), Some(&q(3, 4))), q(5, 7));
    }

    #[test]
    fn decimals_round_outward() {
        assert_eq!(to_decimal(&q(1, 3), 4, false), "0.3333");
        assert_eq!(to_decimal(&q(1, 3), 4, true), "0.3334");
        assert_eq!(to_decimal(&q(-1, 3), 2, false), "-0.34");
        assert_eq!(to_decimal(&q(5, 4), 0, true), "2");
        assert_eq!(exact_string(&q(10, 4)), "5/2");
    }
}
