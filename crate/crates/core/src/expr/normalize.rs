use super::{Expr, ExprError};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

/// Exact constant folding plus the identities `0+e`, `e+0`, `e-0`, `1*e`,
/// `e*1`, `0*e`, `e/1`, `0/e`, `e^0`, `e^1` and `Neg(c) -> -c`. Idempotent.
pub fn normalize(e: &Expr) -> Result<Expr, ExprError> {
    Ok(match e {
        Expr::Const(_) | Expr::Pi | Expr::Var => e.clone(),
        Expr::Neg(a) => match normalize(a)? {
            Expr::Const(c) => Expr::Const(-c),
            a => -a,
        },
        Expr::Add(a, b) => match (normalize(a)?, normalize(b)?) {
            (Expr::Const(p), Expr::Const(q)) => Expr::Const(p + q),
            (a, b) if a.is_zero_constant() => b,
            (a, b) if b.is_zero_constant() => a,
            (a, b) => a + b,
        },
        Expr::Sub(a, b) => match (normalize(a)?, normalize(b)?) {
            (Expr::Const(p), Expr::Const(q)) => Expr::Const(p - q),
            (a, b) if b.is_zero_constant() => a,
            (a, b) if a.is_zero_constant() => -b,
            (a, b) => a - b,
        },
        Expr::Mul(a, b) => match (normalize(a)?, normalize(b)?) {
            (Expr::Const(p), Expr::Const(q)) => Expr::Const(p * q),
            (a, b) if a.is_zero_constant() || b.is_zero_constant() => {
                Expr::Const(BigRational::zero())
            }
            (a, b) if a.is_one_constant() => b,
            (a, b) if b.is_one_constant() => a,
            (a, b) => a * b,
        },
        Expr::Div(a, b) => match (normalize(a)?, normalize(b)?) {
            (_, b) if b.is_zero_constant() => return Err(ExprError::DivisionByZeroConstant),
            (Expr::Const(p), Expr::Const(q)) => Expr::Const(p / q),
            (a, _) if a.is_zero_constant() => Expr::Const(BigRational::zero()),
            (a, b) if b.is_one_constant() => a,
            (a, b) => a / b,
        },
        Expr::Pow(a, n) => {
            let a = normalize(a)?;
            match (a, *n) {
                (_, 0) => Expr::Const(BigRational::one()),
                (a, 1) => a,
                (Expr::Const(c), n) => Expr::Const(Pow::pow(c, n)),
                (a, n) => a.pow(n),
            }
        }
        Expr::Apply(f, a) => match normalize(a)? {
            Expr::Const(c) if c.is_zero() => Expr::Const(f.value_at_zero()),
            a => Expr::apply(*f, a),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn n(s: &str) -> Expr {
        normalize(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn identity_rules() {
        assert_eq!(n("0*exp(x)"), Expr::int(0));
        assert_eq!(n("x + 0"), Expr::Var);
        assert_eq!(n("(1/2)*(1/3)"), Expr::rat(1, 6));
        assert_eq!(n("x^0"), Expr::int(1));
        assert_eq!(n("(x+1)^1"), parse("x+1").unwrap());
        assert_eq!(n("-(1/2)"), Expr::rat(-1, 2));
        assert_eq!(n("sin(x-x)"), parse("sin(x-x)").unwrap());
        assert_eq!(n("cos(1-1)"), Expr::int(1));
        assert_eq!(n("0 - x"), -Expr::Var);
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(
            normalize(&parse("x/(1-1)").unwrap()),
            Err(ExprError::DivisionByZeroConstant)
        );
        assert_eq!(
            normalize(&parse("1/(2*0)").unwrap()),
            Err(ExprError::DivisionByZeroConstant)
        );
    }

    #[test]
    fn idempotent_on_examples() {
        for s in [
            "0*x + 1*x",
            "(x-0)^1*exp(0*x)",
            "-(0-x)",
            "2*(1/2)*x/1",
            "sin(pi*x)^2 - 0",
        ] {
            let once = n(s);
            assert_eq!(normalize(&once).unwrap(), once, "{s}");
        }
    }
}
