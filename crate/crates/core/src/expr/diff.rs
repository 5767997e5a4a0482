use super::{Expr, Func};

/// Symbolic d/dx by the standard rules. The result is not normalized.
pub fn differentiate(f: &Expr) -> Expr {
    match f {
        Expr::Const(_) | Expr::Pi => Expr::int(0),
        Expr::Var => Expr::int(1),
        Expr::Neg(a) => -differentiate(a),
        Expr::Add(a, b) => differentiate(a) + differentiate(b),
        Expr::Sub(a, b) => differentiate(a) - differentiate(b),
        Expr::Mul(a, b) => differentiate(a) * (**b).clone() + (**a).clone() * differentiate(b),
        Expr::Div(a, b) => {
            let num = differentiate(a) * (**b).clone() - (**a).clone() * differentiate(b);
            num / (**b).clone().pow(2)
        }
        Expr::Pow(_, 0) => Expr::int(0),
        Expr::Pow(a, n) => differentiate(a) * (Expr::int(*n as i64) * (**a).clone().pow(n - 1)),
        Expr::Apply(func, a) => {
            let inner = (**a).clone();
            let outer = match func {
                Func::Exp => inner.exp(),
                Func::Sin => inner.cos(),
                Func::Cos => -inner.sin(),
                Func::Sinh => inner.cosh(),
                Func::Cosh => inner.sinh(),
            };
            differentiate(a) * outer
        }
    }
}
