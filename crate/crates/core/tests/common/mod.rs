//! Seeded random corpora shared by the integration and acceptance tests.
#![allow(dead_code)]

use analytic_ideals::expr::{Expr, Func};
use analytic_ideals::oracle::RatPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A rational in `[lo, hi]` with denominator at most `max_den`.
pub fn rational_in(rng: &mut StdRng, lo: i64, hi: i64, max_den: i64) -> BigRational {
    let d = rng.gen_range(1..=max_den);
    q(rng.gen_range(lo * d..=hi * d), d)
}

pub fn unit_rational(rng: &mut StdRng) -> BigRational {
    rational_in(rng, 0, 1, 12)
}

/// Small nonzero rational coefficient.
pub fn coefficient(rng: &mut StdRng) -> BigRational {
    loop {
        let c = q(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        if c != q(0, 1) {
            return c;
        }
    }
}

/// Dense polynomial with small rational coefficients and exact degree `deg`.
pub fn dense_poly(rng: &mut StdRng, deg: usize) -> RatPoly {
    let mut c: Vec<BigRational> = (0..deg)
        .map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect();
    c.push(coefficient(rng));
    RatPoly::new(c)
}

/// Degree-at-most-8 polynomial mixing rational roots inside and outside
/// `[0,1]`, repeated roots, irrational real roots, close complex pairs and
/// dense random factors.
pub fn mixed_poly(rng: &mut StdRng) -> RatPoly {
    let target = rng.gen_range(1..=8);
    let mut p = RatPoly::constant(coefficient(rng));
    let mut deg = 0;
    while deg < target {
        let room = target - deg;
        let kind = rng.gen_range(0..5);
        let (f, d) = match kind {
            0 => {
                let m = rng.gen_range(1..=3.min(room));
                (RatPoly::linear(&unit_rational(rng)).pow(m as u32), m)
            }
            1 => (RatPoly::linear(&rational_in(rng, -1, 2, 7)), 1),
            2 if room >= 2 => {
                // (x - a)^2 - s: real roots a +- sqrt(s), usually irrational
                let a = unit_rational(rng);
                let s = q(rng.gen_range(1..=30), rng.gen_range(30..=200));
                let lin = RatPoly::linear(&a);
                (lin.mul(&lin).sub(&RatPoly::constant(s)), 2)
            }
            3 if room >= 2 => {
                // (x - a)^2 + b^2 with b possibly tiny: complex pair near [0,1]
                let a = unit_rational(rng);
                let b = q(1, rng.gen_range(2..=400));
                let lin = RatPoly::linear(&a);
                (lin.mul(&lin).add(&RatPoly::constant(&b * &b)), 2)
            }
            _ => {
                let d = rng.gen_range(1..=3.min(room));
                (dense_poly(rng, d), d)
            }
        };
        p = p.mul(&f);
        deg += d;
    }
    p
}

/// Planted product `prod (x - g_i)^{m_i}` with distinct rational `g_i` in
/// `[0,1]` and total multiplicity at most `max_total`.
pub fn planted(rng: &mut StdRng, max_total: u32) -> Vec<(BigRational, u32)> {
    let total = rng.gen_range(1..=max_total);
    let mut out: Vec<(BigRational, u32)> = vec![];
    let mut used = 0;
    while used < total {
        let m = rng.gen_range(1..=total - used);
        let g = unit_rational(rng);
        match out.iter_mut().find(|(h, _)| *h == g) {
            Some(e) => e.1 += m,
            None => out.push((g, m)),
        }
        used += m;
    }
    out.sort();
    out
}

/// Factored expression for a planted product.
pub fn planted_expr(roots: &[(BigRational, u32)]) -> Expr {
    roots
        .iter()
        .map(|(g, m)| match m {
            1 => Expr::linear_factor(g),
            _ => Expr::linear_factor(g).pow(*m),
        })
        .reduce(|a, b| a * b)
        .unwrap_or_else(|| Expr::int(1))
}

/// Random structurally nonzero analytic expression on `[0,1]`, built from
/// pieces whose zeros the isolator can decide.
pub fn analytic_expr(rng: &mut StdRng) -> Expr {
    let x = Expr::x;
    match rng.gen_range(0..9) {
        0 => planted_expr(&planted(rng, 3)),
        1 => mixed_poly(rng).to_expr(),
        2 => x().exp() - Expr::constant(rational_in(rng, 1, 3, 4)),
        3 => (Expr::Pi * Expr::constant(rational_in(rng, 1, 3, 2)) * x()).sin(),
        4 => (x() - Expr::constant(unit_rational(rng))).sin(),
        5 => x().cos() - Expr::constant(q(rng.gen_range(1..=9), 10)),
        6 => x().exp() + Expr::constant(q(rng.gen_range(1..=5), 1)),
        7 => Expr::constant(coefficient(rng)),
        _ => (x() - Expr::constant(unit_rational(rng))).sinh() * x().cosh(),
    }
}

pub fn small_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

pub fn unit_point() -> impl Strategy<Value = BigRational> {
    (1i64..=64).prop_flat_map(|d| (0..=d).prop_map(move |n| q(n, d)))
}

/// Arbitrary expression trees, including ones that are not analytic.
pub fn any_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Var),
        Just(Expr::Pi),
        small_rational().prop_map(Expr::Const)
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
            inner.clone().prop_map(|a| -a),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| a.pow(k)),
            (inner, 0usize..5).prop_map(|(a, i)| Expr::apply(Func::ALL[i], a)),
        ]
    })
}

/// Expressions analytic on a neighbourhood of `[0,1]` with moderate size:
/// denominators are bounded below and exponentials see bounded arguments.
pub fn analytic() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        3 => Just(Expr::Var),
        1 => Just(Expr::Pi),
        2 => small_rational().prop_map(Expr::Const),
    ];
    leaf.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            inner.clone().prop_map(|a| -a),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| a.pow(k)),
            inner.clone().prop_map(Expr::sin),
            inner.clone().prop_map(Expr::cos),
            (
                inner.clone(),
                prop_oneof![Just(Func::Exp), Just(Func::Sinh), Just(Func::Cosh)]
            )
                .prop_map(|(a, f)| Expr::apply(f, a.sin())),
            (inner.clone(), inner).prop_map(|(a, b)| a / (Expr::int(2) + b.cos())),
        ]
    })
}

/// Strategy form of [`mixed_poly`].
pub fn poly_strategy() -> impl Strategy<Value = RatPoly> {
    any::<u64>().prop_map(|seed| mixed_poly(&mut rng(seed)))
}
