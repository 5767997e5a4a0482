mod common;

use analytic_ideals::expr::{normalize, parse, Expr};
use analytic_ideals::ideals::{equal, Ideal};
use analytic_ideals::oracle::{exact_unit_interval_divisor, OracleRoot, RatPoly};
use analytic_ideals::roots::{isolate_zeros, refine, Config, Divisor, Point, RootsError, Zeros};
use analytic_ideals::taylor::Dyadic;
use common::{analytic_expr, mixed_poly, planted, q, rational_in, rng};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn divisor(f: &Expr) -> Divisor {
    match isolate_zeros(f, &Config::default()).unwrap() {
        Zeros::Divisor(d) => d,
        Zeros::ZeroFunction => panic!("{f} is not the zero function"),
    }
}

fn sign(v: &BigRational) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// The pipeline divisor against the exact one, point by point.
fn agrees_with_oracle(d: &Divisor, p: &RatPoly) -> Result<(), String> {
    let oracle = exact_unit_interval_divisor(p);
    if d.len() != oracle.len() {
        return Err(format!("{} zeros, oracle has {}", d.len(), oracle.len()));
    }
    for ((pt, m), (r, n)) in d.entries().iter().zip(&oracle) {
        if m != n {
            return Err(format!("multiplicity {m} at {pt}, oracle {n}"));
        }
        let ok = match (pt, r) {
            (Point::Exact(a), OracleRoot::Exact(b)) => a == b,
            (Point::Exact(_), OracleRoot::Isolated { .. }) => false,
            (Point::Enclosure(_), OracleRoot::Exact(b)) => pt.lo() <= *b && *b <= pt.hi(),
            (Point::Enclosure(_), OracleRoot::Isolated { lo, hi, factor }) => {
                let (a, b) = (pt.lo(), pt.hi());
                *lo <= a && b <= *hi && sign(&factor.eval(&a)) * sign(&factor.eval(&b)) < 0
            }
        };
        if !ok {
            return Err(format!("{pt} does not match {r:?}"));
        }
    }
    Ok(())
}

#[test]
fn divisors_agree_with_the_oracle() {
    let mut r = rng(101);
    for _ in 0..150 {
        let p = mixed_poly(&mut r);
        let d = divisor(&p.to_expr());
        agrees_with_oracle(&d, &p).unwrap_or_else(|e| panic!("{p:?}: {e}"));
        for (pt, _) in d.entries() {
            if let Point::Enclosure(e) = pt {
                assert!(e.interval.width() <= Dyadic::pow2(-53));
            }
        }
    }
}

#[test]
fn planted_roots_are_complete() {
    let mut r = rng(7);
    for _ in 0..100 {
        let roots = planted(&mut r, 5);
        // noise roots outside [0,1]
        let noise = [rational_in(&mut r, -3, -1, 5), rational_in(&mut r, 2, 4, 5)];
        let p = RatPoly::from_roots(&roots)
            .mul(&RatPoly::linear(&noise[0]))
            .mul(&RatPoly::linear(&noise[1]));
        let d = divisor(&p.to_expr());
        assert_eq!(d.len(), roots.len(), "{p:?}");
        let got: Vec<(BigRational, u32)> = d
            .entries()
            .iter()
            .map(|(pt, m)| (pt.as_exact().unwrap().clone(), *m))
            .collect();
        assert_eq!(got, roots);
    }
}

#[test]
fn multiplicities_add_over_products() {
    let cfg = Config::default();
    let mut r = rng(19);
    let mut checked = 0;
    while checked < 60 {
        let (f, g) = (analytic_expr(&mut r), analytic_expr(&mut r));
        let (Ok(Zeros::Divisor(a)), Ok(Zeros::Divisor(b))) =
            (isolate_zeros(&f, &cfg), isolate_zeros(&g, &cfg))
        else {
            continue;
        };
        let fg = divisor(&(f.clone() * g.clone()));
        let sum = analytic_ideals::ideals::product(
            &Ideal::from_divisor(a),
            &Ideal::from_divisor(b),
            &cfg,
        )
        .unwrap();
        assert!(
            equal(&Ideal::from_divisor(fg), &sum, &cfg).unwrap(),
            "{f} * {g}"
        );
        checked += 1;
    }
}

#[test]
fn zero_function_only_for_the_zero_constant() {
    let cfg = Config::default();
    let nonzero = [
        "sin(x)^2 + cos(x)^2 - 1",
        "x - x",
        "exp(x) - exp(x)",
        "(x+1)^2 - x^2 - 2*x - 1",
        "sinh(x) - (exp(x) - exp(-x))/2",
        "cos(2*x) - 1 + 2*sin(x)^2",
    ];
    for s in nonzero {
        let r = isolate_zeros(&parse(s).unwrap(), &cfg);
        assert!(
            matches!(r, Err(RootsError::Undecidable { .. })),
            "{s}: {r:?}"
        );
    }
    for s in ["0", "0*exp(x)", "x*0 + 0", "(1 - 1)*sin(x)", "-(2/2 - 1)"] {
        assert!(
            matches!(
                isolate_zeros(&parse(s).unwrap(), &cfg).unwrap(),
                Zeros::ZeroFunction
            ),
            "{s}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn zero_function_verdicts_are_structural(f in common::analytic()) {
        let cfg = Config { max_precision: 256, ..Config::default() };
        if let Ok(Zeros::ZeroFunction) = isolate_zeros(&f, &cfg) {
            prop_assert!(normalize(&f).unwrap().is_zero_constant());
        }
    }
}

#[test]
fn refinement_narrows_and_keeps_the_root() {
    let cfg = Config::default();
    let d = divisor(&parse("x^3 - 1/3").unwrap());
    let target = Dyadic::pow2(-200);
    let p = refine(&d.entries()[0].0, &target, &cfg).unwrap();
    let Point::Enclosure(e) = &p else {
        panic!("cube root of 1/3 is irrational")
    };
    assert!(e.interval.width() <= target);
    let (lo, hi) = (p.lo(), p.hi());
    let third = q(1, 3);
    assert!(&lo * &lo * &lo < third && third < &hi * &hi * &hi);
}
