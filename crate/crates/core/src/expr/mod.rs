//! Closed-form analytic expressions in one variable `x`.
//!
//! The class is built from exact rational constants, `pi`, `x`, the field
//! operations, nonnegative integer powers and `exp`, `sin`, `cos`, `sinh`,
//! `cosh`. It is closed under differentiation.

mod diff;
mod display;
mod normalize;
mod parse;

pub use diff::differentiate;
pub use normalize::normalize;
pub use parse::parse;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Elementary functions admitted in expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Func {
    pub const ALL: [Func; 5] = [Func::Exp, Func::Sin, Func::Cos, Func::Sinh, Func::Cosh];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Exact value at 0; every admitted function has a rational value there.
    pub fn value_at_zero(self) -> BigRational {
        match self {
            Func::Exp | Func::Cos | Func::Cosh => BigRational::one(),
            Func::Sin | Func::Sinh => BigRational::zero(),
        }
    }
}

/// Abstract syntax tree. Constants are exact rationals (lowest terms,
/// positive denominator, which `BigRational` maintains).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(BigRational),
    Pi,
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Apply(Func, Box<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("constant denominator folds to exactly zero")]
    DivisionByZeroConstant,
}

impl Expr {
    pub fn x() -> Expr {
        Expr::Var
    }

    pub fn int(v: i64) -> Expr {
        Expr::Const(BigRational::from_integer(BigInt::from(v)))
    }

    /// The rational constant `n/d`. Panics if `d == 0`.
    pub fn rat(n: i64, d: i64) -> Expr {
        Expr::Const(BigRational::new(n.into(), d.into()))
    }

    pub fn constant(q: BigRational) -> Expr {
        Expr::Const(q)
    }

    pub fn pow(self, n: u32) -> Expr {
        Expr::Pow(Box::new(self), n)
    }

    pub fn apply(f: Func, arg: Expr) -> Expr {
        Expr::Apply(f, Box::new(arg))
    }

    pub fn exp(self) -> Expr {
        Expr::apply(Func::Exp, self)
    }

    pub fn sin(self) -> Expr {
        Expr::apply(Func::Sin, self)
    }

    pub fn cos(self) -> Expr {
        Expr::apply(Func::Cos, self)
    }

    pub fn sinh(self) -> Expr {
        Expr::apply(Func::Sinh, self)
    }

    pub fn cosh(self) -> Expr {
        Expr::apply(Func::Cosh, self)
    }

    /// `x - q`
    pub fn linear_factor(q: &BigRational) -> Expr {
        if q.is_zero() {
            Expr::Var
        } else {
            Expr::Var - Expr::Const(q.clone())
        }
    }

    pub fn as_const(&self) -> Option<&BigRational> {
        match self {
            Expr::Const(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_zero_constant(&self) -> bool {
        matches!(self, Expr::Const(q) if q.is_zero())
    }

    pub fn is_one_constant(&self) -> bool {
        matches!(self, Expr::Const(q) if q.is_one())
    }

    /// True when the tree uses only rationals, `x` and field operations, so
    /// it denotes a rational function with rational coefficients.
    pub fn is_rational_function(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var => true,
            Expr::Pi | Expr::Apply(..) => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.is_rational_function(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_rational_function() && b.is_rational_function()
            }
        }
    }

    /// True for rational functions without division nodes.
    pub fn is_polynomial(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var => true,
            Expr::Pi | Expr::Apply(..) | Expr::Div(..) => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.is_polynomial(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.is_polynomial() && b.is_polynomial()
            }
        }
    }

    /// Replaces every `x` by `value`.
    pub fn substitute(&self, value: &Expr) -> Expr {
        let sub = |a: &Expr| Box::new(a.substitute(value));
        match self {
            Expr::Var => value.clone(),
            Expr::Const(_) | Expr::Pi => self.clone(),
            Expr::Neg(a) => Expr::Neg(sub(a)),
            Expr::Add(a, b) => Expr::Add(sub(a), sub(b)),
            Expr::Sub(a, b) => Expr::Sub(sub(a), sub(b)),
            Expr::Mul(a, b) => Expr::Mul(sub(a), sub(b)),
            Expr::Div(a, b) => Expr::Div(sub(a), sub(b)),
            Expr::Pow(a, n) => Expr::Pow(sub(a), *n),
            Expr::Apply(f, a) => Expr::Apply(*f, sub(a)),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Pi | Expr::Var => 1,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Apply(_, a) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Every `Div` denominator, innermost first.
    pub fn denominators(&self) -> Vec<&Expr> {
        let mut out = Vec::new();
        self.collect_denominators(&mut out);
        out
    }

    fn collect_denominators<'a>(&'a self, out: &mut Vec<&'a Expr>) {
        match self {
            Expr::Const(_) | Expr::Pi | Expr::Var => {}
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Apply(_, a) => a.collect_denominators(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_denominators(out);
                b.collect_denominators(out);
            }
            Expr::Div(a, b) => {
                a.collect_denominators(out);
                b.collect_denominators(out);
                out.push(b);
            }
        }
    }

    /// Splits a product into `(factor, exponent)` pairs, looking through
    /// `Neg`, `Mul`, `Pow` and the numerator of `Div`. Constant factors are
    /// dropped.
    pub fn multiplicative_factors(&self) -> Vec<(Expr, u32)> {
        let mut out = Vec::new();
        self.collect_factors(1, &mut out);
        out
    }

    fn collect_factors(&self, power: u32, out: &mut Vec<(Expr, u32)>) {
        match self {
            Expr::Const(_) | Expr::Pi => {}
            Expr::Neg(a) => a.collect_factors(power, out),
            Expr::Mul(a, b) => {
                a.collect_factors(power, out);
                b.collect_factors(power, out);
            }
            Expr::Div(a, _) => a.collect_factors(power, out),
            Expr::Pow(a, n) if *n > 0 => a.collect_factors(power * n, out),
            Expr::Pow(..) => {}
            other => {
                if let Some(slot) = out.iter_mut().find(|(f, _)| f == other) {
                    slot.1 += power;
                } else {
                    out.push((other.clone(), power));
                }
            }
        }
    }

    /// Whether `factor` divides `self` structurally: equality, or reachable
    /// through `Neg`, `Mul` operands, positive `Pow` bases and `Div`
    /// numerators. A zero of `factor` is then a zero of `self`.
    pub fn has_structural_factor(&self, factor: &Expr) -> bool {
        if self == factor {
            return true;
        }
        match self {
            Expr::Neg(a) => a.has_structural_factor(factor),
            Expr::Mul(a, b) => a.has_structural_factor(factor) || b.has_structural_factor(factor),
            Expr::Pow(a, n) if *n > 0 => a.has_structural_factor(factor),
            Expr::Div(a, _) => a.has_structural_factor(factor),
            _ => false,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display::serialize(self))
    }
}

/// Canonical text form; `parse(serialize(e)) == e` for parser-producible trees.
pub fn serialize(e: &Expr) -> String {
    display::serialize(e)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl std::ops::$tr for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_of_product() {
        let e = parse("-2*x*(x-1/2)^2/(x+1)").unwrap();
        let f = e.multiplicative_factors();
        assert_eq!(f, vec![(Expr::Var, 1), (parse("x-1/2").unwrap(), 2)]);
    }

    #[test]
    fn substitution() {
        let e = parse("sin(pi*x) + x^2").unwrap();
        assert_eq!(
            e.substitute(&Expr::rat(1, 3)).to_string(),
            "sin(pi*1/3) + (1/3)^2"
        );
        assert_eq!(e.substitute(&Expr::Var), e);
    }

    #[test]
    fn structural_factor() {
        let g = parse("exp(x)-2").unwrap();
        let f = parse("(x-1/3)*(exp(x)-2)^2").unwrap();
        assert!(f.has_structural_factor(&g));
        assert!(!g.has_structural_factor(&f));
        assert!(!parse("exp(x)-2+0").unwrap().has_structural_factor(&g));
    }

    #[test]
    fn classification() {
        assert!(parse("x^2-1/3").unwrap().is_polynomial());
        assert!(parse("1/(x+1)").unwrap().is_rational_function());
        assert!(!parse("1/(x+1)").unwrap().is_polynomial());
        assert!(!parse("pi*x").unwrap().is_rational_function());
    }

    #[test]
    fn denominators_innermost_first() {
        let e = parse("1/(1/(x+2)+1)").unwrap();
        let d = e.denominators();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], &parse("x+2").unwrap());
    }
}
