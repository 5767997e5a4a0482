mod common;

use analytic_ideals::expr::{differentiate, normalize, parse, serialize, Expr};
use analytic_ideals::taylor::{eval, Interval};
use common::{analytic, any_expr, small_rational, unit_point};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn serialized_text_reparses_to_the_same_tree(e in any_expr()) {
        let text = serialize(&e);
        let a = parse(&text).unwrap();
        prop_assert_eq!(parse(&serialize(&a)).unwrap(), a);
    }

    #[test]
    fn normalize_is_idempotent(e in any_expr()) {
        if let Ok(n) = normalize(&e) {
            prop_assert_eq!(normalize(&n).unwrap(), n);
        }
    }

    #[test]
    fn differentiation_is_linear(f in analytic(), g in analytic(), a in small_rational(), b in small_rational()) {
        let (ca, cb) = (Expr::constant(a), Expr::constant(b));
        let lhs = differentiate(&(ca.clone() * f.clone() + cb.clone() * g.clone()));
        let rhs = ca * differentiate(&f) + cb * differentiate(&g);
        prop_assert_eq!(normalize(&lhs).unwrap(), normalize(&rhs).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normalization_preserves_values(f in analytic(), points in proptest::collection::vec(unit_point(), 20)) {
        let n = normalize(&f).unwrap();
        for x in points {
            let at = Interval::from_rational(&x, 128);
            let (u, v) = (eval(&f, &at, 128).unwrap(), eval(&n, &at, 128).unwrap());
            prop_assert!(u.overlaps(&v), "{} vs {} at {}", u, v, x);
        }
    }
}
