//! Recursive-descent parser for coefficient expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! `a/b` with integer operands is the rational literal a/b. Whitespace is
//! insignificant. Columns in errors are 1-based character positions.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::{Context, Rational, Scalar};

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {column} (found {found})")]
pub struct ExprError {
    pub column: usize,
    pub found: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
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

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(ExprError {
                column: col,
                found: format!("`{c}`"),
                message: "unexpected character".into(),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Context,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: &str) -> ExprError {
        ExprError {
            column: self.col(),
            found: self.peek().to_string(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Scalar, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    let (_, col) = self.bump();
                    let rhs = self.unary()?;
                    acc = acc.try_div(&rhs).map_err(|_| ExprError {
                        column: col,
                        found: "`/`".into(),
                        message: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ExprError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (_, caret_col) = self.bump();
        match self.peek().clone() {
            Tok::Int(n) => {
                let e: u32 = match u32::try_from(&n) {
                    Ok(e) if e <= MAX_EXPONENT => e,
                    _ => return Err(self.error_here("exponent too large")),
                };
                self.bump();
                Ok(base.pow(e))
            }
            _ => Err(ExprError {
                column: caret_col,
                found: self.peek().to_string(),
                message: "expected a nonnegative integer exponent after `^`".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Scalar, ExprError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Scalar::from_rational(self.ctx, Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                let err = self.error_here("undeclared parameter");
                self.bump();
                Scalar::param(self.ctx, &name).map_err(|_| err)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error_here("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error_here("expected a number, parameter or `(`")),
        }
    }
}

pub(super) fn parse(ctx: &Context, text: &str) -> Result<Scalar, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser { ctx, toks, pos: 0 };
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here("unexpected trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(["Lambda", "z"]).unwrap()
    }

    #[test]
    fn precedence() {
        let c = ctx();
        let a = parse(&c, "-z^2").unwrap();
        let b = -(Scalar::param(&c, "z").unwrap().pow(2));
        assert_eq!(a, b);
        assert_eq!(
            parse(&c, "1/2*z").unwrap(),
            parse(&c, "(1/2)*z").unwrap()
        );
        assert_eq!(parse(&c, "2 - 3 - 4").unwrap(), Scalar::from_int(&c, -5));
    }

    #[test]
    fn dangling_caret_reports_its_column() {
        let e = parse(&ctx(), "Lambda^").unwrap_err();
        assert_eq!(e.column, 7);
        assert_eq!(e.found, "end of input");
    }

    #[test]
    fn negative_exponent_rejected() {
        let e = parse(&ctx(), "z^-1").unwrap_err();
        assert_eq!(e.column, 2);
    }

    #[test]
    fn undeclared_parameter() {
        let e = parse(&ctx(), "2*eta").unwrap_err();
        assert_eq!(e.column, 3);
        assert_eq!(e.message, "undeclared parameter");
    }

    #[test]
    fn division_by_zero() {
        let e = parse(&ctx(), "z/(Lambda-Lambda)").unwrap_err();
        assert_eq!(e.column, 2);
    }

    #[test]
    fn stray_characters_and_parens() {
        assert_eq!(parse(&ctx(), "z # 2").unwrap_err().column, 3);
        assert_eq!(parse(&ctx(), "(z + 1").unwrap_err().found, "end of input");
        assert!(parse(&ctx(), "z z").is_err());
        assert!(parse(&ctx(), "").is_err());
    }
}
