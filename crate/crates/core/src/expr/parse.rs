//! Recursive-descent parser.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := "-" factor | atom ("^" UINT)? ;
//! atom   := RATIONAL | DECIMAL | "pi" | "x" | FUNC "(" expr ")" | "(" expr ")" ;
//! ```
//!
//! A rational literal `INT/UINT` is recognized only when the slash touches
//! both digit runs; `1 / 2` is a division node, `1/2` a constant.

use super::{Expr, ExprError, Func};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer {n}"),
        Tok::Decimal(q) => format!("decimal {q}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(offset: usize, expected: &[&str], found: String) -> ExprError {
    ExprError::Syntax {
        offset,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            out.push(Token { tok, start, end: i });
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part: BigInt = text[start..i].parse().unwrap();
            if i < bytes.len() && bytes[i] == b'.' {
                let frac_start = i + 1;
                let mut j = frac_start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == frac_start {
                    return Err(syntax(j, &["digit"], found_at(text, j)));
                }
                let frac: BigInt = text[frac_start..j].parse().unwrap();
                let scale = BigInt::from(10u32).pow((j - frac_start) as u32);
                let value = BigRational::new(int_part * &scale + frac, scale);
                out.push(Token {
                    tok: Tok::Decimal(value),
                    start,
                    end: j,
                });
                i = j;
            } else {
                out.push(Token {
                    tok: Tok::Int(int_part),
                    start,
                    end: i,
                });
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                start,
                end: i,
            });
            continue;
        }
        let ch = text[start..].chars().next().unwrap();
        return Err(syntax(start, &["expression"], format!("'{ch}'")));
    }
    out.push(Token {
        tok: Tok::End,
        start: text.len(),
        end: text.len(),
    });
    Ok(out)
}

fn found_at(text: &str, offset: usize) -> String {
    match text[offset..].chars().next() {
        Some(c) => format!("'{c}'"),
        None => "end of input".into(),
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const ATOM_START: &[&str] = &["number", "'pi'", "'x'", "function name", "'('", "'-'"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ExprError {
        let t = self.peek();
        syntax(t.start, expected, describe(&t.tok))
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = lhs + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = lhs * self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    lhs = lhs / self.factor()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp_tok = self.peek().clone();
        let n = match &exp_tok.tok {
            Tok::Int(n) => n.to_u32().ok_or_else(|| {
                syntax(
                    exp_tok.start,
                    &["exponent below 2^32"],
                    describe(&exp_tok.tok),
                )
            })?,
            _ => return Err(self.error(&["unsigned integer exponent"])),
        };
        self.bump();
        if self.peek().tok == Tok::Caret {
            // ^ is non-associative
            return Err(self.error(&["'+'", "'-'", "'*'", "'/'", "')'", "end of input"]));
        }
        Ok(base.pow(n))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                let slash = self.peek().clone();
                let den = self.peek_at(1).clone();
                if slash.tok == Tok::Slash && slash.start == t.end {
                    if let Tok::Int(d) = &den.tok {
                        if den.start == slash.end {
                            if d.is_zero() {
                                return Err(syntax(
                                    den.start,
                                    &["nonzero denominator"],
                                    describe(&den.tok),
                                ));
                            }
                            self.bump();
                            self.bump();
                            return Ok(Expr::Const(BigRational::new(n, d.clone())));
                        }
                    }
                }
                Ok(Expr::Const(BigRational::from_integer(n)))
            }
            Tok::Decimal(q) => {
                self.bump();
                Ok(Expr::Const(q))
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "pi" => Ok(Expr::Pi),
                    "x" => Ok(Expr::Var),
                    _ => {
                        let func = Func::from_name(&name).ok_or_else(|| {
                            syntax(
                                t.start,
                                &["'pi'", "'x'", "exp", "sin", "cos", "sinh", "cosh"],
                                format!("'{name}'"),
                            )
                        })?;
                        self.expect(Tok::LParen, "'('")?;
                        let arg = self.expr()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Expr::apply(func, arg))
                    }
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.error(ATOM_START)),
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ExprError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }
}

/// Parses expression text. Decimal literals become exact rationals.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]));
    }
    Ok(e)
}
