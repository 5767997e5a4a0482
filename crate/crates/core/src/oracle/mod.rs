//! Exact rational polynomial arithmetic used as ground truth.
//!
//! Nothing here touches floating point or interval code, so agreement with
//! the certified pipeline is a meaningful cross-check.

use crate::expr::Expr;
use crate::rational::simplest_between;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials")]
    BothZero,
}

/// Dense polynomial, lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> RatPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> RatPoly {
        RatPoly::new(
            c.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn zero() -> RatPoly {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> RatPoly {
        RatPoly::new(vec![c])
    }

    pub fn one() -> RatPoly {
        RatPoly::constant(BigRational::one())
    }

    pub fn x() -> RatPoly {
        RatPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `x - r`
    pub fn linear(r: &BigRational) -> RatPoly {
        RatPoly::new(vec![-r, BigRational::one()])
    }

    /// `prod (x - r)^m`
    pub fn from_roots(roots: &[(BigRational, u32)]) -> RatPoly {
        roots.iter().fold(RatPoly::one(), |acc, (r, m)| {
            acc.mul(&RatPoly::linear(r).pow(*m))
        })
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> RatPoly {
        (0..k).fold(RatPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.iter().map(|c| c / &g * &sign).collect()
    }

    /// Polynomial expression to coefficients. `None` when `e` involves pi,
    /// an elementary function, or division by a non-constant.
    pub fn from_expr(e: &Expr) -> Option<RatPoly> {
        Some(match e {
            Expr::Const(q) => RatPoly::constant(q.clone()),
            Expr::Var => RatPoly::x(),
            Expr::Pi | Expr::Apply(..) => return None,
            Expr::Neg(a) => RatPoly::from_expr(a)?.scale(&-BigRational::one()),
            Expr::Add(a, b) => RatPoly::from_expr(a)?.add(&RatPoly::from_expr(b)?),
            Expr::Sub(a, b) => RatPoly::from_expr(a)?.sub(&RatPoly::from_expr(b)?),
            Expr::Mul(a, b) => RatPoly::from_expr(a)?.mul(&RatPoly::from_expr(b)?),
            Expr::Div(a, b) => {
                let d = RatPoly::from_expr(b)?;
                if d.degree() != Some(0) {
                    return None;
                }
                RatPoly::from_expr(a)?.scale(&d.lc().recip())
            }
            Expr::Pow(a, k) => RatPoly::from_expr(a)?.pow(*k),
        })
    }

    /// Horner-form expression `c0 + x*(c1 + x*(...))`, for test corpora.
    pub fn to_expr(&self) -> Expr {
        let mut it = self.coeffs.iter().rev();
        let Some(first) = it.next() else {
            return Expr::int(0);
        };
        it.fold(Expr::constant(first.clone()), |acc, c| {
            Expr::x() * acc + Expr::constant(c.clone())
        })
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `a = q*b + r` with `deg r < deg b`.
pub fn poly_divmod(a: &RatPoly, b: &RatPoly) -> Result<(RatPoly, RatPoly), OracleError> {
    let db = b.degree().ok_or(OracleError::DivisionByZeroPoly)?;
    let lc = b.lc();
    let mut r = a.coeffs.clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lc;
        for (j, bj) in b.coeffs.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    Ok((RatPoly::new(q), RatPoly::new(r)))
}

/// Monic greatest common divisor by Euclid's algorithm.
pub fn poly_gcd(a: &RatPoly, b: &RatPoly) -> Result<RatPoly, OracleError> {
    if a.is_zero() && b.is_zero() {
        return Err(OracleError::BothZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = poly_divmod(&x, &y)?;
        x = y;
        y = r.monic();
    }
    Ok(x.monic())
}

fn squarefree_part(p: &RatPoly) -> RatPoly {
    let g = poly_gcd(p, &p.derivative()).expect("p is nonzero");
    poly_divmod(p, &g).expect("gcd is nonzero").0
}

fn sign_changes(seq: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sturm_sequence(p: &RatPoly) -> Vec<RatPoly> {
    let s = squarefree_part(p);
    let mut seq = vec![s.clone(), s.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = poly_divmod(&seq[n - 2], &seq[n - 1]).unwrap();
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-BigRational::one()));
    }
    seq
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> usize {
    assert!(!p.is_zero(), "sturm_count of the zero polynomial");
    if lo >= hi {
        return 0;
    }
    let seq = sturm_sequence(p);
    sign_changes(&seq, lo) - sign_changes(&seq, hi)
}

/// Yun's algorithm: `p = c * prod f_i^i` with each `f_i` square-free and the
/// `f_i` pairwise coprime. Factors are monic; trivial ones are omitted.
pub fn squarefree_decompose(p: &RatPoly) -> Vec<(RatPoly, u32)> {
    assert!(
        !p.is_zero(),
        "square-free decomposition of the zero polynomial"
    );
    if p.degree() == Some(0) {
        return vec![];
    }
    let dp = p.derivative();
    let a0 = poly_gcd(p, &dp).unwrap();
    let mut b = poly_divmod(p, &a0).unwrap().0;
    let mut c = poly_divmod(&dp, &a0).unwrap().0;
    let mut d = c.sub(&b.derivative());
    let mut out = vec![];
    let mut i = 1;
    while b.degree() != Some(0) {
        let a = poly_gcd(&b, &d).unwrap();
        if a.degree() != Some(0) {
            out.push((a.monic(), i));
        }
        b = poly_divmod(&b, &a).unwrap().0;
        c = poly_divmod(&d, &a).unwrap().0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// A root of the exact divisor: either a rational, or the unique root of a
/// square-free factor inside the open interval `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleRoot {
    Exact(BigRational),
    Isolated {
        lo: BigRational,
        hi: BigRational,
        factor: RatPoly,
    },
}

impl OracleRoot {
    pub fn lo(&self) -> &BigRational {
        match self {
            OracleRoot::Exact(q) => q,
            OracleRoot::Isolated { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &BigRational {
        match self {
            OracleRoot::Exact(q) => q,
            OracleRoot::Isolated { hi, .. } => hi,
        }
    }

    /// Shrink an isolating interval to width at most `width` by exact bisection.
    pub fn refined(&self, width: &BigRational) -> OracleRoot {
        let OracleRoot::Isolated { lo, hi, factor } = self else {
            return self.clone();
        };
        let (mut a, mut b) = (lo.clone(), hi.clone());
        // the open left end may be another root of the factor; the right
        // end never is
        let sb = factor.eval(&b).signum();
        while &(&b - &a) > width {
            let m = (&a + &b) / BigRational::from_integer(2.into());
            let fm = factor.eval(&m);
            if fm.is_zero() {
                return OracleRoot::Exact(m);
            }
            if fm.signum() == sb {
                b = m;
            } else {
                a = m;
            }
        }
        OracleRoot::Isolated {
            lo: a,
            hi: b,
            factor: factor.clone(),
        }
    }
}

/// Roots of the square-free `f` in `(lo, hi]`, which contains `count` of them.
fn isolate(
    f: &RatPoly,
    lo: BigRational,
    hi: BigRational,
    count: usize,
    lc_bound: &BigInt,
    out: &mut Vec<OracleRoot>,
) {
    if count == 0 {
        return;
    }
    if count == 1 {
        if f.eval(&hi).is_zero() {
            out.push(OracleRoot::Exact(hi));
            return;
        }
        out.push(single_root(f, lo, hi, lc_bound));
        return;
    }
    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
    let left = sturm_count(f, &lo, &mid);
    isolate(f, lo, mid.clone(), left, lc_bound, out);
    isolate(f, mid, hi, count - left, lc_bound, out);
}

/// The one root of `f` in the open `(lo, hi)`. A rational root `p/q` has
/// `q | lc`, and two such rationals are at least `1/lc^2` apart, so once the
/// interval is that narrow its simplest rational is the only candidate.
fn single_root(f: &RatPoly, mut lo: BigRational, mut hi: BigRational, lc: &BigInt) -> OracleRoot {
    let lc2 = BigRational::from_integer(lc * lc);
    let sign_lo = f.eval(&lo).signum();
    let original = (lo.clone(), hi.clone());
    while (&hi - &lo) * &lc2 >= BigRational::one() {
        let m = (&lo + &hi) / BigRational::from_integer(2.into());
        let fm = f.eval(&m);
        if fm.is_zero() {
            return OracleRoot::Exact(m);
        }
        if fm.signum() == sign_lo || (sign_lo.is_zero() && sturm_count(f, &lo, &m) == 0) {
            lo = m;
        } else {
            hi = m;
        }
    }
    let cand = simplest_between(&lo, Some(&hi));
    if cand.denom() <= lc && f.eval(&cand).is_zero() {
        return OracleRoot::Exact(cand);
    }
    OracleRoot::Isolated {
        lo: original.0,
        hi: original.1,
        factor: f.clone(),
    }
}

/// Complete exact divisor of `p` on `[0, 1]`, sorted by position.
pub fn exact_unit_interval_divisor(p: &RatPoly) -> Vec<(OracleRoot, u32)> {
    assert!(!p.is_zero(), "the zero polynomial has no divisor");
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut out = vec![];
    for (f, m) in squarefree_decompose(p) {
        let lc = f.primitive_integer().last().cloned().unwrap();
        let mut roots = vec![];
        if f.eval(&zero).is_zero() {
            roots.push(OracleRoot::Exact(zero.clone()));
        }
        let n = sturm_count(&f, &zero, &one);
        isolate(&f, zero.clone(), one.clone(), n, &lc, &mut roots);
        out.extend(roots.into_iter().map(|r| (r, m)));
    }
    separate(&mut out);
    out
}

/// Bisect isolating intervals until no interval meets another entry, so
/// that sorting by left endpoint is sorting by position.
fn separate(roots: &mut [(OracleRoot, u32)]) {
    loop {
        roots.sort_by(|a, b| (a.0.lo(), a.0.hi()).cmp(&(b.0.lo(), b.0.hi())));
        let mut clash = vec![false; roots.len()];
        for i in 1..roots.len() {
            if roots[i].0.lo() <= roots[i - 1].0.hi() {
                clash[i] = true;
                clash[i - 1] = true;
            }
        }
        if !clash.contains(&true) {
            return;
        }
        for (r, c) in roots.iter_mut().zip(clash) {
            if c {
                let half = (r.0.hi() - r.0.lo()) / BigRational::from_integer(2.into());
                r.0 = r.0.refined(&half);
            }
        }
    }
}
