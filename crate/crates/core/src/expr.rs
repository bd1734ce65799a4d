//! Parser for polynomial expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := power ('*'? power)*          // juxtaposition multiplies
//! power  := '-' power | atom ('^' integer)?
//! atom   := integer | 'x' digits | 'eps' | '(' expr ')'
//! ```
//!
//! Variables are 1-based (`x1` .. `xn`). `eps` stands for the parameter of a
//! parametric family and must be supplied at evaluation time. Products are
//! evaluated in written order, so the same expression can be read in the
//! commutative polynomial ring or in an enveloping algebra.

use alloc::boxed::Box;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    /// 0-based variable index.
    Var(usize),
    Eps,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// A ring an [`Expr`] can be evaluated in.
pub trait EvalContext {
    type Value: Clone;
    fn constant(&self, c: i64) -> Result<Self::Value>;
    fn variable(&self, i: usize) -> Result<Self::Value>;
    fn eps(&self) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: &Self::Value) -> Result<Self::Value>;
}

impl Expr {
    pub fn eval<C: EvalContext>(&self, ctx: &C) -> Result<C::Value> {
        Ok(match self {
            Expr::Int(c) => ctx.constant(*c)?,
            Expr::Var(i) => ctx.variable(*i)?,
            Expr::Eps => ctx.eps()?,
            Expr::Neg(a) => ctx.neg(&a.eval(ctx)?)?,
            Expr::Add(a, b) => ctx.add(&a.eval(ctx)?, &b.eval(ctx)?)?,
            Expr::Sub(a, b) => ctx.sub(&a.eval(ctx)?, &b.eval(ctx)?)?,
            Expr::Mul(a, b) => ctx.mul(&a.eval(ctx)?, &b.eval(ctx)?)?,
            Expr::Pow(a, e) => {
                let base = a.eval(ctx)?;
                let mut acc = ctx.constant(1)?;
                for _ in 0..*e {
                    acc = ctx.mul(&acc, &base)?;
                }
                acc
            }
        })
    }

    /// Largest variable index used, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Int(_) | Expr::Eps => None,
            Expr::Var(i) => Some(*i),
            Expr::Neg(a) | Expr::Pow(a, _) => a.max_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                match (a.max_var(), b.max_var()) {
                    (Some(x), Some(y)) => Some(x.max(y)),
                    (x, y) => x.or(y),
                }
            }
        }
    }

    pub fn uses_eps(&self) -> bool {
        match self {
            Expr::Eps => true,
            Expr::Int(_) | Expr::Var(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses_eps(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.uses_eps() || b.uses_eps(),
        }
    }
}

/// Commutative evaluation into `F_p[x_1..x_n]`.
pub struct PolyContext {
    pub field: PrimeField,
    pub nvars: usize,
    pub eps: Option<u32>,
}

impl EvalContext for PolyContext {
    type Value = Poly;
    fn constant(&self, c: i64) -> Result<Poly> {
        Ok(Poly::constant(self.field, self.nvars, c))
    }
    fn variable(&self, i: usize) -> Result<Poly> {
        Poly::var(self.field, self.nvars, i)
    }
    fn eps(&self) -> Result<Poly> {
        let e = self.eps.ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expression uses eps but no value was given".into(),
        })?;
        Ok(Poly::constant(self.field, self.nvars, e as i64))
    }
    fn add(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        a.add(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        a.sub(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        a.mul(b)
    }
    fn neg(&self, a: &Poly) -> Result<Poly> {
        Ok(a.neg())
    }
}

/// Parse and evaluate commutatively.
pub fn parse_poly(src: &str, field: PrimeField, nvars: usize, eps: Option<u32>) -> Result<Poly> {
    parse(src)?.eval(&PolyContext { field, nvars, eps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Var(usize),
    Eps,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: &str) -> Error {
    Error::Parse {
        pos,
        msg: String::from(msg),
    }
}

fn lex(src: &str) -> Result<alloc::vec::Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = alloc::vec::Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                let mut v: i64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as i64))
                        .ok_or_else(|| err(start, "integer literal too large"))?;
                    i += 1;
                }
                out.push((start, Tok::Int(v)));
                continue;
            }
            b'x' | b'X' => {
                i += 1;
                if i < bytes.len() && bytes[i] == b'_' {
                    i += 1;
                }
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err(start, "expected digits after `x`"));
                }
                let idx: usize = src[ds..i]
                    .parse()
                    .map_err(|_| err(start, "bad variable index"))?;
                if idx == 0 {
                    return Err(err(start, "variables are numbered from x1"));
                }
                out.push((start, Tok::Var(idx - 1)));
                continue;
            }
            b'e' if src[i..].starts_with("eps") => {
                i += 3;
                out.push((start, Tok::Eps));
                continue;
            }
            _ => return Err(err(start, "unexpected character")),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: alloc::vec::Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Int(_) | Tok::Var(_) | Tok::Eps | Tok::LParen) => {
                    let rhs = self.power()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        if self.peek() == Some(Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.power()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(Tok::Caret) {
            self.pos += 1;
            let at = self.here();
            match self.peek() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e = u32::try_from(e).map_err(|_| err(at, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(err(at, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.peek() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                Ok(Expr::Var(i))
            }
            Some(Tok::Eps) => {
                self.pos += 1;
                Ok(Expr::Eps)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(err(self.here(), "expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => Err(err(at, "expected a number, variable, or `(`")),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(p.here(), "trailing input"));
    }
    Ok(e)
}
