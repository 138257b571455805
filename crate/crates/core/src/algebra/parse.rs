//! A small expression language for scalars, forms and Chow classes.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | ident | '√' ['-'] integer | 'sqrt' '(' ['-'] integer ')' | '(' expr ')'
//! ```
//!
//! Identifiers are resolved by the caller, so the same parser reads
//! `(1+2√3)/5`, `(s^2+t)/(s-1)`, `y*z - x^2` and `-2*xi - 4*A`.

use num_bigint::BigInt;

use super::field::FieldElement;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().expect("digits")));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word == "sqrt" {
                    out.push(Token::Sqrt);
                } else {
                    out.push(Token::Ident(word));
                }
            }
            '√' => {
                out.push(Token::Sqrt);
                i += 1;
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '−' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' | '·' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {src:?}"))),
        }
    }
    Ok(out)
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    /// Square root of an integer literal.
    Sqrt(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<(), Error> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Int(_) | Token::Ident(_) | Token::Sqrt | Token::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                got => return Err(Error::Parse(format!("expected integer exponent, found {got:?}"))),
            }
        }
        Ok(base)
    }

    fn radicand(&mut self) -> Result<i64, Error> {
        let neg = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Token::Int(n)) => {
                let v: i64 = n.try_into().map_err(|_| Error::Parse("radicand too large".into()))?;
                Ok(if neg { -v } else { v })
            }
            got => Err(Error::Parse(format!("expected integer radicand, found {got:?}"))),
        }
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Expr::Int(n)),
            Some(Token::Ident(v)) => Ok(Expr::Var(v)),
            Some(Token::Sqrt) => {
                let d = if self.peek() == Some(&Token::LParen) {
                    self.pos += 1;
                    let d = self.radicand()?;
                    self.expect(Token::RParen)?;
                    d
                } else {
                    self.radicand()?
                };
                Ok(Expr::Sqrt(d))
            }
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            got => Err(Error::Parse(format!("unexpected token {got:?}"))),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, Error> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

/// Values an [`Expr`] can be evaluated into.
pub trait ExprValue: Sized + Clone {
    fn from_scalar(c: FieldElement) -> Self;
    fn add(&self, other: &Self) -> Result<Self, Error>;
    fn sub(&self, other: &Self) -> Result<Self, Error>;
    fn mul(&self, other: &Self) -> Result<Self, Error>;
    fn div(&self, other: &Self) -> Result<Self, Error>;
    fn neg(&self) -> Self;
}

impl Expr {
    pub fn eval<T: ExprValue>(&self, var: &impl Fn(&str) -> Option<T>) -> Result<T, Error> {
        Ok(match self {
            Expr::Int(n) => T::from_scalar(FieldElement::from_bigint(n.clone())),
            Expr::Var(v) => var(v).ok_or_else(|| Error::Parse(format!("unknown variable {v:?}")))?,
            Expr::Sqrt(d) => T::from_scalar(FieldElement::sqrt_of(*d)?),
            Expr::Neg(e) => e.eval(var)?.neg(),
            Expr::Add(a, b) => a.eval(var)?.add(&b.eval(var)?)?,
            Expr::Sub(a, b) => a.eval(var)?.sub(&b.eval(var)?)?,
            Expr::Mul(a, b) => a.eval(var)?.mul(&b.eval(var)?)?,
            Expr::Div(a, b) => a.eval(var)?.div(&b.eval(var)?)?,
            Expr::Pow(b, e) => {
                let base = b.eval(var)?;
                let mut acc = T::from_scalar(FieldElement::one());
                for _ in 0..*e {
                    acc = acc.mul(&base)?;
                }
                acc
            }
        })
    }
}

impl ExprValue for FieldElement {
    fn from_scalar(c: FieldElement) -> Self {
        c
    }

    fn add(&self, other: &Self) -> Result<Self, Error> {
        self.field().join(other.field())?;
        Ok(self + other)
    }

    fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.field().join(other.field())?;
        Ok(self - other)
    }

    fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.field().join(other.field())?;
        Ok(self * other)
    }

    fn div(&self, other: &Self) -> Result<Self, Error> {
        self.field().join(other.field())?;
        if other.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(self / other)
    }

    fn neg(&self) -> Self {
        -self
    }
}

/// Parses a scalar: rational, element of ℚ(√d), or rational function in `s`, `t`.
pub fn parse_scalar(src: &str) -> Result<FieldElement, Error> {
    parse_expr(src)?.eval(&|v: &str| match v {
        "s" => Some(FieldElement::param_s()),
        "t" => Some(FieldElement::param_t()),
        _ => None,
    })
}
