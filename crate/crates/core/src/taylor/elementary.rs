//! Rigorous enclosures of pi, exp, sin, cos, sinh and cosh.
//!
//! Point arguments are evaluated by truncated power series plus an explicit
//! tail bound at a guarded working precision; interval arguments use
//! monotonicity and the location of critical points.

use super::dyadic::Dyadic;
use super::interval::Interval;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Mutex, OnceLock};

const GUARD: u32 = 24;

/// Enclosure of pi at `prec` bits (memoized per precision).
pub fn pi(prec: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let w = prec + GUARD;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let a = arctan_inv(5, w).mul(&Interval::from_i64(16), w);
    let b = arctan_inv(239, w).mul(&Interval::from_i64(4), w);
    let v = a.sub(&b, w).round(prec);
    cache.lock().unwrap().insert(prec, v.clone());
    v
}

/// atan(1/k) for integer k >= 2 via the alternating series.
fn arctan_inv(k: i64, w: u32) -> Interval {
    let k2 = k * k;
    let mut power = Interval::one().div_int(k, w); // 1/k^(2n+1)
    let mut sum = power.clone();
    let eps = Dyadic::pow2(-(w as i64) - 4);
    let mut n: i64 = 0;
    loop {
        n += 1;
        power = power.div_int(k2, w);
        let term = power.div_int(2 * n + 1, w);
        if n % 2 == 1 {
            sum = sum.sub(&term, w);
        } else {
            sum = sum.add(&term, w);
        }
        if term.mag() < eps {
            // alternating with decreasing terms: the tail is bounded by the next term
            return sum.add(&Interval::symmetric(term.mag()), w);
        }
    }
}

fn exp_point(x: &Dyadic, prec: u32) -> Interval {
    if x.is_zero() {
        return Interval::one();
    }
    // reduce to |r| < 2^-8, then square back up
    let s = (x.floor_log2().unwrap() + 9).max(0) as u32;
    let w = prec + GUARD + s;
    let r = Interval::point(x.mul_pow2(-(s as i64)));
    let eps = Dyadic::pow2(-(w as i64) - 2);
    let mut term = Interval::one();
    let mut sum = Interval::one();
    let mut n = 0i64;
    loop {
        n += 1;
        term = term.mul(&r, w).div_int(n, w);
        sum = sum.add(&term, w);
        if term.mag() < eps {
            // remaining terms shrink by at least 2^-8 each
            sum = sum.add(&Interval::symmetric(term.mag()), w);
            break;
        }
    }
    for _ in 0..s {
        sum = sum.sqr(w);
    }
    sum.round(prec)
}

/// Range enclosure of exp over `x`.
pub fn exp(x: &Interval, prec: u32) -> Interval {
    if x.is_point() {
        return exp_point(x.lo(), prec);
    }
    let lo = exp_point(x.lo(), prec).lo().clone();
    let hi = exp_point(x.hi(), prec).hi().clone();
    Interval::new(lo, hi)
}

/// (sin r, cos r) for a small interval `r` (|r| below about 1).
fn sin_cos_series(r: &Interval, w: u32) -> (Interval, Interval) {
    let r2 = r.sqr(w);
    let eps = Dyadic::pow2(-(w as i64) - 2);
    let mut s_term = r.clone();
    let mut s_sum = r.clone();
    let mut c_term = Interval::one();
    let mut c_sum = Interval::one();
    let mut n = 0i64;
    loop {
        n += 1;
        c_term = c_term.mul(&r2, w).div_int((2 * n - 1) * (2 * n), w).neg();
        s_term = s_term.mul(&r2, w).div_int((2 * n) * (2 * n + 1), w).neg();
        c_sum = c_sum.add(&c_term, w);
        s_sum = s_sum.add(&s_term, w);
        if c_term.mag() < eps && s_term.mag() < eps {
            let t = if c_term.mag() > s_term.mag() {
                c_term.mag()
            } else {
                s_term.mag()
            };
            let tail = Interval::symmetric(t);
            return (s_sum.add(&tail, w), c_sum.add(&tail, w));
        }
    }
}

fn clamp_unit(v: Interval) -> Interval {
    v.intersect(&Interval::new(Dyadic::from_i64(-1), Dyadic::one()))
        .unwrap_or_else(|| Interval::new(Dyadic::from_i64(-1), Dyadic::one()))
}

fn sin_cos_point(x: &Dyadic, prec: u32) -> (Interval, Interval) {
    if x.is_zero() {
        return (Interval::zero(), Interval::one());
    }
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() > 1e15 {
        let unit = Interval::new(Dyadic::from_i64(-1), Dyadic::one());
        return (unit.clone(), unit);
    }
    let k = (xf / FRAC_PI_2).round() as i64;
    let w = prec + GUARD + x.floor_log2().unwrap().max(0) as u32;
    let half_pi = pi(w).mul_pow2(-1);
    let r = Interval::point(x.clone()).sub(&half_pi.mul(&Interval::from_i64(k), w), w);
    let (s, c) = sin_cos_series(&r, w);
    let (sin, cos) = match k.rem_euclid(4) {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    (clamp_unit(sin.round(prec)), clamp_unit(cos.round(prec)))
}

/// Does `x` contain a point of the form `offset * pi/2 + 2*pi*j` for some integer j?
fn touches_critical(x: &Interval, offset: i64, prec: u32) -> bool {
    let lo = x.lo().to_f64();
    let hi = x.hi().to_f64();
    let base = offset as f64 * FRAC_PI_2;
    let jmin = ((lo - base) / (2.0 * PI)).floor() as i64 - 1;
    let jmax = ((hi - base) / (2.0 * PI)).ceil() as i64 + 1;
    let w = prec + GUARD;
    let half_pi = pi(w).mul_pow2(-1);
    (jmin..=jmax).any(|j| {
        let c = half_pi.mul(&Interval::from_i64(offset + 4 * j), w);
        c.overlaps(x)
    })
}

fn wide(x: &Interval) -> bool {
    let w = x.width().to_f64();
    !w.is_finite() || w > 7.0 || x.mag().to_f64() > 1e15
}

/// Range enclosure of sin over `x`.
pub fn sin(x: &Interval, prec: u32) -> Interval {
    if x.is_point() {
        return sin_cos_point(x.lo(), prec).0;
    }
    let unit = Interval::new(Dyadic::from_i64(-1), Dyadic::one());
    if wide(x) {
        return unit;
    }
    let a = sin_cos_point(x.lo(), prec).0;
    let b = sin_cos_point(x.hi(), prec).0;
    let mut out = a.hull(&b);
    if touches_critical(x, 1, prec) {
        out = out.hull(&Interval::one());
    }
    if touches_critical(x, 3, prec) {
        out = out.hull(&Interval::from_i64(-1));
    }
    clamp_unit(out)
}

/// Range enclosure of cos over `x`.
pub fn cos(x: &Interval, prec: u32) -> Interval {
    if x.is_point() {
        return sin_cos_point(x.lo(), prec).1;
    }
    let unit = Interval::new(Dyadic::from_i64(-1), Dyadic::one());
    if wide(x) {
        return unit;
    }
    let a = sin_cos_point(x.lo(), prec).1;
    let b = sin_cos_point(x.hi(), prec).1;
    let mut out = a.hull(&b);
    if touches_critical(x, 0, prec) {
        out = out.hull(&Interval::one());
    }
    if touches_critical(x, 2, prec) {
        out = out.hull(&Interval::from_i64(-1));
    }
    clamp_unit(out)
}

fn sinh_cosh_point(x: &Dyadic, prec: u32) -> (Interval, Interval) {
    if x.is_zero() {
        return (Interval::zero(), Interval::one());
    }
    let w = prec + GUARD;
    let e = exp_point(x, w);
    let inv = Interval::one().div(&e, w).expect("exp is positive");
    let sinh = e.sub(&inv, w).mul_pow2(-1).round(prec);
    let cosh = e.add(&inv, w).mul_pow2(-1).round(prec);
    let cosh = cosh
        .intersect(&Interval::new(
            Dyadic::one(),
            cosh.hi().clone().max(Dyadic::one()),
        ))
        .unwrap_or(cosh);
    (sinh, cosh)
}

/// Range enclosure of sinh over `x` (monotone).
pub fn sinh(x: &Interval, prec: u32) -> Interval {
    if x.is_point() {
        return sinh_cosh_point(x.lo(), prec).0;
    }
    let lo = sinh_cosh_point(x.lo(), prec).0.lo().clone();
    let hi = sinh_cosh_point(x.hi(), prec).0.hi().clone();
    Interval::new(lo, hi)
}

/// Range enclosure of cosh over `x` (minimum 1 at 0).
pub fn cosh(x: &Interval, prec: u32) -> Interval {
    if x.is_point() {
        return sinh_cosh_point(x.lo(), prec).1;
    }
    let a = sinh_cosh_point(x.lo(), prec).1;
    let b = sinh_cosh_point(x.hi(), prec).1;
    if !x.lo().is_negative() {
        Interval::new(a.lo().clone(), b.hi().clone())
    } else if !x.hi().is_positive() {
        Interval::new(b.lo().clone(), a.hi().clone())
    } else {
        Interval::new(Dyadic::one(), a.hull(&b).hi().clone())
    }
}
