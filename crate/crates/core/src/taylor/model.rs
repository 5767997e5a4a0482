//! Taylor models: a truncated polynomial in `(x - center)` with interval
//! coefficients plus an interval remainder valid over a whole domain.

use super::interval::Interval;
use super::series;
use super::TaylorError;
use crate::expr::{Expr, Func};
use num_rational::BigRational;

#[derive(Clone, Debug)]
pub struct TaylorModel {
    /// Expansion point actually used.
    pub center: BigRational,
    pub domain: Interval,
    /// `coeffs[n]` encloses the n-th coefficient of the polynomial part.
    pub coeffs: Vec<Interval>,
    pub remainder: Interval,
}

impl TaylorModel {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Enclosure of `f(t)` for all `t` in `x`, which must lie in the domain.
    pub fn enclose(&self, x: &Interval, prec: u32) -> Interval {
        let c = Interval::from_rational(&self.center, prec);
        let h = x.sub(&c, prec);
        horner(&self.coeffs, &h, prec).add(&self.remainder, prec)
    }

    /// Enclosure of the range of `f` over the whole domain.
    pub fn range(&self, prec: u32) -> Interval {
        self.enclose(&self.domain, prec)
    }
}

fn horner(coeffs: &[Interval], h: &Interval, prec: u32) -> Interval {
    let mut acc = Interval::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(h, prec).add(c, prec);
    }
    acc
}

/// Polynomial part plus remainder, sharing one domain and order.
#[derive(Clone, Debug)]
struct Tm {
    p: Vec<Interval>,
    r: Interval,
}

struct Ctx {
    center: Interval,
    /// `domain - center`
    h: Interval,
    order: usize,
    prec: u32,
}

impl Ctx {
    /// Bound of `sum p[k] h^k` using tight even powers of `h`.
    fn bound(&self, p: &[Interval]) -> Interval {
        let mut acc = Interval::zero();
        for (k, c) in p.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            let term = if k == 0 {
                c.clone()
            } else {
                c.mul(&self.h.powi(k as u32, self.prec), self.prec)
            };
            acc = acc.add(&term, self.prec);
        }
        acc
    }

    fn constant(&self, v: Interval) -> Tm {
        let mut p = vec![Interval::zero(); self.order + 1];
        p[0] = v;
        Tm {
            p,
            r: Interval::zero(),
        }
    }

    fn add(&self, a: &Tm, b: &Tm) -> Tm {
        Tm {
            p: a.p
                .iter()
                .zip(&b.p)
                .map(|(x, y)| x.add(y, self.prec))
                .collect(),
            r: a.r.add(&b.r, self.prec),
        }
    }

    fn neg(&self, a: &Tm) -> Tm {
        Tm {
            p: a.p.iter().map(Interval::neg).collect(),
            r: a.r.neg(),
        }
    }

    fn mul(&self, a: &Tm, b: &Tm) -> Tm {
        let n = self.order;
        let prec = self.prec;
        let mut full = vec![Interval::zero(); 2 * n + 1];
        for (i, x) in a.p.iter().enumerate() {
            if x.is_exact_zero() {
                continue;
            }
            for (j, y) in b.p.iter().enumerate() {
                if y.is_exact_zero() {
                    continue;
                }
                full[i + j] = full[i + j].add(&x.mul(y, prec), prec);
            }
        }
        let high: Vec<Interval> = (0..=2 * n)
            .map(|k| {
                if k > n {
                    full[k].clone()
                } else {
                    Interval::zero()
                }
            })
            .collect();
        full.truncate(n + 1);
        let ba = self.bound(&a.p);
        let bb = self.bound(&b.p);
        let r = self
            .bound(&high)
            .add(&ba.mul(&b.r, prec), prec)
            .add(&bb.mul(&a.r, prec), prec)
            .add(&a.r.mul(&b.r, prec), prec);
        Tm { p: full, r }
    }

    fn pow(&self, a: &Tm, k: u32) -> Tm {
        let mut result = self.constant(Interval::one());
        let mut base = a.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `g(a)` where `g` has Taylor coefficients `point` at `t0 = a.p[0].mid()`
    /// and `tail` encloses the coefficient of order `N+1` over the range of `a`.
    fn compose(&self, a: &Tm, kernel: Kernel) -> Result<Tm, ()> {
        let prec = self.prec;
        let n = self.order;
        let t0 = Interval::point(a.p[0].mid());
        let mut u = a.clone();
        u.p[0] = a.p[0].sub(&t0, prec);
        let range_u = self.bound(&u.p).add(&u.r, prec).hull_zero();
        let range = t0.add(&range_u, prec);
        let point = kernel.coeffs(&t0, n + 1, prec)?;
        let over = kernel.coeffs(&range, n + 1, prec)?;
        let mut acc = self.constant(point[n].clone());
        for k in (0..n).rev() {
            acc = self.mul(&acc, &u);
            acc.p[0] = acc.p[0].add(&point[k], prec);
        }
        let tail = over[n + 1].mul(&range_u.powi(n as u32 + 1, prec), prec);
        acc.r = acc.r.add(&tail, prec);
        Ok(acc)
    }

    fn model(&self, e: &Expr) -> Result<Tm, ()> {
        let prec = self.prec;
        Ok(match e {
            Expr::Const(q) => self.constant(Interval::from_rational(q, prec)),
            Expr::Pi => self.constant(super::elementary::pi(prec)),
            Expr::Var => {
                let mut t = self.constant(self.center.clone());
                if self.order >= 1 {
                    t.p[1] = Interval::one();
                } else {
                    t.r = self.h.clone();
                }
                t
            }
            Expr::Neg(a) => self.neg(&self.model(a)?),
            Expr::Add(a, b) => self.add(&self.model(a)?, &self.model(b)?),
            Expr::Sub(a, b) => self.add(&self.model(a)?, &self.neg(&self.model(b)?)),
            Expr::Mul(a, b) => self.mul(&self.model(a)?, &self.model(b)?),
            Expr::Div(a, b) => {
                let inv = self.compose(&self.model(b)?, Kernel::Recip)?;
                self.mul(&self.model(a)?, &inv)
            }
            Expr::Pow(a, k) => self.pow(&self.model(a)?, *k),
            Expr::Apply(f, a) => self.compose(&self.model(a)?, Kernel::Func(*f))?,
        })
    }
}

#[derive(Clone, Copy)]
enum Kernel {
    Recip,
    Func(Func),
}

impl Kernel {
    /// Coefficients `g^(k)(t)/k!` for `k <= n`, enclosed over `t in at`.
    fn coeffs(self, at: &Interval, n: usize, prec: u32) -> Result<Vec<Interval>, ()> {
        let mut var = vec![Interval::zero(); n + 1];
        var[0] = at.clone();
        if n >= 1 {
            var[1] = Interval::one();
        }
        match self {
            Kernel::Recip => {
                let mut one = vec![Interval::zero(); n + 1];
                one[0] = Interval::one();
                series::divide(&one, &var, prec).map_err(|_| ())
            }
            Kernel::Func(f) => Ok(series::compose(f, &var, prec)),
        }
    }
}

/// Taylor model of `f` over `domain`, expanded at `center`.
pub fn taylor_model(
    f: &Expr,
    domain: &Interval,
    center: &BigRational,
    order: usize,
    prec: u32,
) -> Result<TaylorModel, TaylorError> {
    let c = Interval::from_rational(center, prec);
    let ctx = Ctx {
        h: domain.sub(&c, prec),
        center: c,
        order,
        prec,
    };
    let tm = ctx.model(f).map_err(|_| TaylorError::NotAnalytic {
        witness: domain.clone(),
    })?;
    Ok(TaylorModel {
        center: center.clone(),
        domain: domain.clone(),
        coeffs: tm.p,
        remainder: tm.r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::taylor::dyadic::Dyadic;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_is_exact() {
        let m = taylor_model(&Expr::Var, &Interval::unit(), &q(1, 4), 3, 128).unwrap();
        assert!(m.remainder.is_exact_zero());
        assert_eq!(m.coeffs[1], Interval::one());
        assert!(m.coeffs[2].is_exact_zero());
    }

    #[test]
    fn exponential_remainder_is_lagrange_sized() {
        let m = taylor_model(
            &parse("exp(x)").unwrap(),
            &Interval::unit(),
            &BigRational::zero(),
            5,
            128,
        )
        .unwrap();
        let w = m.remainder.width();
        assert!(w < Dyadic::from_f64(0.0038), "{w}");
    }

    #[test]
    fn constant_has_zero_remainder() {
        let m = taylor_model(&Expr::rat(3, 4), &Interval::unit(), &q(1, 2), 4, 64).unwrap();
        assert!(m.remainder.is_exact_zero());
        assert!(m.coeffs[1..].iter().all(Interval::is_exact_zero));
    }

    #[test]
    fn reciprocal_of_vanishing_denominator_fails() {
        let f = parse("1/(x - 1/2)").unwrap();
        assert!(taylor_model(&f, &Interval::unit(), &q(1, 2), 3, 64).is_err());
    }

    #[test]
    fn model_contains_samples() {
        let f = parse("sin(pi*x)/(x^2 + 1) + cosh(x)*exp(-x)").unwrap();
        let m = taylor_model(&f, &Interval::unit(), &q(1, 2), 8, 128).unwrap();
        for k in 0..=16 {
            let x = k as f64 / 16.0;
            let pt = Interval::point(Dyadic::from_f64(x));
            let expect = (std::f64::consts::PI * x).sin() / (x * x + 1.0) + x.cosh() * (-x).exp();
            let enc = m.enclose(&pt, 128);
            let slack = 1e-12;
            assert!(
                enc.lo().to_f64() <= expect + slack && expect - slack <= enc.hi().to_f64(),
                "{x}"
            );
        }
    }
}
