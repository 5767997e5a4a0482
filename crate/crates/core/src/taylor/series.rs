//! Truncated Taylor arithmetic over an expression tree.
//!
//! Convention: `c[k] = f^(k)(center) / k!`. When the center is an interval
//! the recurrences are evaluated in interval arithmetic, so `c[k]` encloses
//! `f^(k)(t) / k!` for every `t` in it.

use super::scalar::Coef;
use crate::expr::{Expr, Func};

/// The center's denominator constant term may vanish.
#[derive(Debug)]
pub struct SingularDenominator;

pub fn series<C: Coef>(
    e: &Expr,
    center: &C,
    order: usize,
    prec: u32,
) -> Result<Vec<C>, SingularDenominator> {
    let n = order + 1;
    let zeros = || vec![C::zero(); n];
    Ok(match e {
        Expr::Const(q) => {
            let mut v = zeros();
            v[0] = C::from_rational(q, prec);
            v
        }
        Expr::Pi => {
            let mut v = zeros();
            v[0] = C::pi(prec);
            v
        }
        Expr::Var => {
            let mut v = zeros();
            v[0] = center.clone();
            if n > 1 {
                v[1] = C::one();
            }
            v
        }
        Expr::Neg(a) => series(a, center, order, prec)?.iter().map(C::neg).collect(),
        Expr::Add(a, b) => {
            let (a, b) = (
                series(a, center, order, prec)?,
                series(b, center, order, prec)?,
            );
            a.iter().zip(&b).map(|(x, y)| x.add(y, prec)).collect()
        }
        Expr::Sub(a, b) => {
            let (a, b) = (
                series(a, center, order, prec)?,
                series(b, center, order, prec)?,
            );
            a.iter().zip(&b).map(|(x, y)| x.sub(y, prec)).collect()
        }
        Expr::Mul(a, b) => {
            let (a, b) = (
                series(a, center, order, prec)?,
                series(b, center, order, prec)?,
            );
            cauchy(&a, &b, prec)
        }
        Expr::Div(a, b) => {
            let (a, b) = (
                series(a, center, order, prec)?,
                series(b, center, order, prec)?,
            );
            divide(&a, &b, prec)?
        }
        Expr::Pow(a, k) => {
            let a = series(a, center, order, prec)?;
            power(&a, *k, prec)
        }
        Expr::Apply(f, a) => {
            let a = series(a, center, order, prec)?;
            compose(*f, &a, prec)
        }
    })
}

/// `c = a * b`, truncated to the common length.
pub fn cauchy<C: Coef>(a: &[C], b: &[C], prec: u32) -> Vec<C> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| {
            let mut sum = C::zero();
            for j in 0..=k {
                if a[j].is_exact_zero() || b[k - j].is_exact_zero() {
                    continue;
                }
                sum = sum.add(&a[j].mul(&b[k - j], prec), prec);
            }
            sum
        })
        .collect()
}

/// `c = a / b`: `c[k] = (a[k] - sum_{j=1..k} b[j] c[k-j]) / b[0]`.
pub fn divide<C: Coef>(a: &[C], b: &[C], prec: u32) -> Result<Vec<C>, SingularDenominator> {
    let n = a.len().min(b.len());
    let mut c: Vec<C> = Vec::with_capacity(n);
    for k in 0..n {
        let mut sum = a[k].clone();
        for j in 1..=k {
            if b[j].is_exact_zero() || c[k - j].is_exact_zero() {
                continue;
            }
            sum = sum.sub(&b[j].mul(&c[k - j], prec), prec);
        }
        c.push(sum.div(&b[0], prec).ok_or(SingularDenominator)?);
    }
    Ok(c)
}

pub fn power<C: Coef>(a: &[C], k: u32, prec: u32) -> Vec<C> {
    let mut result: Vec<C> = vec![C::zero(); a.len()];
    result[0] = C::one();
    let mut base = a.to_vec();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = cauchy(&result, &base, prec);
        }
        e >>= 1;
        if e > 0 {
            base = cauchy(&base, &base, prec);
        }
    }
    result
}

/// Series of `f(a(t))` from the series of `a`.
pub fn compose<C: Coef>(f: Func, a: &[C], prec: u32) -> Vec<C> {
    let n = a.len();
    match f {
        Func::Exp => {
            let mut c = vec![a[0].apply(Func::Exp, prec)];
            for k in 1..n {
                let mut sum = C::zero();
                for j in 1..=k {
                    if a[j].is_exact_zero() || c[k - j].is_exact_zero() {
                        continue;
                    }
                    sum = sum.add(&a[j].mul(&c[k - j], prec).scale(j as i64, 1, prec), prec);
                }
                c.push(sum.scale(1, k as i64, prec));
            }
            c
        }
        Func::Sin | Func::Cos => {
            let (s, co) = coupled(a, Func::Sin, Func::Cos, -1, prec);
            if f == Func::Sin {
                s
            } else {
                co
            }
        }
        Func::Sinh | Func::Cosh => {
            let (s, co) = coupled(a, Func::Sinh, Func::Cosh, 1, prec);
            if f == Func::Sinh {
                s
            } else {
                co
            }
        }
    }
}

/// Recurrences for `(s, c)` with `s' = a' c` and `c' = sign * a' s`.
fn coupled<C: Coef>(a: &[C], fs: Func, fc: Func, sign: i64, prec: u32) -> (Vec<C>, Vec<C>) {
    let n = a.len();
    let mut s = vec![a[0].apply(fs, prec)];
    let mut c = vec![a[0].apply(fc, prec)];
    for k in 1..n {
        let mut ss = C::zero();
        let mut cs = C::zero();
        for j in 1..=k {
            if a[j].is_exact_zero() {
                continue;
            }
            if !c[k - j].is_exact_zero() {
                ss = ss.add(&a[j].mul(&c[k - j], prec).scale(j as i64, 1, prec), prec);
            }
            if !s[k - j].is_exact_zero() {
                cs = cs.add(&a[j].mul(&s[k - j], prec).scale(j as i64, 1, prec), prec);
            }
        }
        s.push(ss.scale(1, k as i64, prec));
        c.push(cs.scale(sign, k as i64, prec));
    }
    (s, c)
}
