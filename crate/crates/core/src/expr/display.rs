//! Canonical serialization with minimal parentheses.

use super::Expr;
use num_traits::{One, Signed};

// binding strength of the outermost construct of a rendered node
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 5;

fn strength(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) => PRODUCT,
        Expr::Neg(_) => UNARY,
        Expr::Const(q) if q.is_negative() => UNARY,
        Expr::Pow(..) => 4,
        _ => ATOM,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    let s = serialize(e);
    if strength(e) < min {
        format!("({s})")
    } else {
        s
    }
}

pub(super) fn serialize(e: &Expr) -> String {
    match e {
        Expr::Const(q) => {
            if q.denom().is_one() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        }
        Expr::Pi => "pi".into(),
        Expr::Var => "x".into(),
        Expr::Apply(f, a) => format!("{}({})", f.name(), serialize(a)),
        Expr::Neg(a) => format!("-{}", wrap(a, UNARY)),
        Expr::Add(a, b) => format!("{} + {}", wrap(a, SUM), wrap(b, SUM + 1)),
        Expr::Sub(a, b) => format!("{} - {}", wrap(a, SUM), wrap(b, SUM + 1)),
        Expr::Mul(a, b) => format!("{}*{}", wrap(a, PRODUCT), wrap(b, PRODUCT + 1)),
        Expr::Div(a, b) => {
            let l = wrap(a, PRODUCT);
            let r = wrap(b, PRODUCT + 1);
            // keep "2 / 3" from being read back as the literal 2/3
            let ends_digit = l.ends_with(|c: char| c.is_ascii_digit());
            let starts_digit = r.starts_with(|c: char| c.is_ascii_digit());
            if ends_digit && starts_digit {
                format!("{l} / {r}")
            } else {
                format!("{l}/{r}")
            }
        }
        Expr::Pow(a, n) => {
            let base = match &**a {
                Expr::Const(q) if !q.denom().is_one() || q.is_negative() => {
                    format!("({})", serialize(a))
                }
                _ => wrap(a, ATOM),
            };
            format!("{base}^{n}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn canonical_examples() {
        assert_eq!(serialize(&Expr::Var.pow(2)), "x^2");
        assert_eq!(serialize(&(Expr::Var + Expr::rat(1, 2))), "x + 1/2");
        assert_eq!(serialize(&(Expr::Pi * Expr::Var).sin()), "sin(pi*x)");
    }

    #[test]
    fn tricky_trees_round_trip() {
        let x = || Expr::Var;
        let cases = vec![
            Expr::int(1) / Expr::int(2),
            (x() / Expr::int(2)) / Expr::int(3),
            x() / Expr::rat(2, 3),
            (x() * Expr::int(2)) / Expr::int(3),
            x() * Expr::rat(2, 3),
            Expr::rat(1, 2).pow(2),
            (-x()).pow(2),
            x().pow(2).pow(3),
            x() - (x() - x()),
            x() + (x() + x()),
            x() * (x() * x()),
            -(x() + x()),
            -(x() * x()),
            (-x()) * x(),
            x() - -x(),
            Expr::Var.pow(2) / Expr::int(3),
            Expr::rat(1, 2) / x(),
        ];
        for e in cases {
            let text = serialize(&e);
            assert_eq!(parse(&text).unwrap(), e, "{text}");
        }
    }
}
