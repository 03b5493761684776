//! Polynomial literals: parsing and canonical rendering.
//!
//! The accepted grammar covers everything that appears in input files and on
//! the command line:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*')? factor)*          -- juxtaposition multiplies
//! factor  := '-' factor | postfix
//! postfix := primary ('^' uint)*
//! primary := uint | symbol | '(' expr ')'
//! ```
//!
//! Symbols are resolved by the evaluator against a caller-supplied binding
//! set (`t`, `th`, `X`, `z`, `pi`, and `x` for a generator of a non-prime
//! coefficient field), so the same parse tree can be evaluated in different
//! rings.  Rendering produces a canonical string that re-parses to the same
//! element, printing descending powers and folding a scalar `-1` into a
//! subtraction (so `tau = t - th` rather than `t + 2*th` over F_3).

use std::fmt;
use std::sync::Arc;

use super::field::{FFElem, FiniteField};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::{AlgebraError, AlgebraResult, Ring, Var};

#[derive(Debug, Clone, PartialEq)]
pub struct LiteralError {
    /// Byte offset into the source string.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for LiteralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for LiteralError {}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, LiteralError> {
    Err(LiteralError {
        pos,
        message: message.into(),
    })
}

// ---------------------------------------------------------------------------
// parse trees
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(u64),
    Sym(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, LiteralError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                let mut value: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                        .ok_or(LiteralError {
                            pos: start,
                            message: "integer literal too large".into(),
                        })?;
                    i += 1;
                }
                toks.push((start, Tok::Int(value)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            }
            other => return err(i, format!("unexpected character `{other}`")),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    cursor: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.cursor).map(|(_, t)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, LiteralError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, LiteralError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                // juxtaposition: `2t`, `t(t+1)`, `(t+1)x`
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, LiteralError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, LiteralError> {
        let mut base = self.primary()?;
        while matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Int(e)) => {
                    let e32 = u32::try_from(e)
                        .map_err(|_| LiteralError {
                            pos,
                            message: "exponent too large".into(),
                        })?;
                    base = Expr::Pow(Box::new(base), e32);
                }
                _ => return err(pos, "expected an integer exponent after `^`"),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, LiteralError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Ident(name)) => Ok(Expr::Sym(name)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let pos = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => err(pos, "expected `)`"),
                }
            }
            Some(other) => err(pos, format!("unexpected token {other:?}")),
            None => err(pos, "unexpected end of input"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, LiteralError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return err(0, "empty expression");
    }
    let mut parser = Parser {
        toks: &toks,
        cursor: 0,
        len: src.len(),
    };
    let expr = parser.expr()?;
    if parser.cursor != toks.len() {
        return err(parser.pos(), "trailing input after expression");
    }
    Ok(expr)
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

/// `n * one` by double-and-add.
pub fn ring_scalar<R: Ring>(one: &R, n: u64) -> R {
    let mut acc = one.zero_like();
    let mut addend = one.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.add(&addend);
        }
        n >>= 1;
        if n > 0 {
            addend = addend.add(&addend);
        }
    }
    acc
}

/// `base^e` by binary exponentiation.
pub fn ring_pow<R: Ring>(base: &R, e: u32) -> R {
    let mut result = base.one_like();
    let mut b = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&b);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b);
        }
    }
    result
}

/// Evaluate a parse tree in a ring, resolving symbols through `lookup`.
pub fn eval_expr<R: Ring>(
    expr: &Expr,
    one: &R,
    lookup: &dyn Fn(&str) -> Option<R>,
) -> AlgebraResult<R> {
    match expr {
        Expr::Int(n) => Ok(ring_scalar(one, *n)),
        Expr::Sym(name) => lookup(name)
            .ok_or_else(|| AlgebraError::Invalid(format!("unknown symbol `{name}` here"))),
        Expr::Add(a, b) => Ok(eval_expr(a, one, lookup)?.add(&eval_expr(b, one, lookup)?)),
        Expr::Sub(a, b) => Ok(eval_expr(a, one, lookup)?.sub(&eval_expr(b, one, lookup)?)),
        Expr::Neg(a) => Ok(eval_expr(a, one, lookup)?.neg()),
        Expr::Mul(a, b) => Ok(eval_expr(a, one, lookup)?.mul(&eval_expr(b, one, lookup)?)),
        Expr::Pow(a, e) => Ok(ring_pow(&eval_expr(a, one, lookup)?, *e)),
    }
}

fn generator_binding(field: &Arc<FiniteField>) -> Option<FFElem> {
    FFElem::generator(field).ok()
}

/// Evaluate as a univariate polynomial over `field` in the variable `var`
/// (plus `x` for the field generator when `field` is an extension).
pub fn eval_scalar_poly(
    expr: &Expr,
    var: Var,
    field: &Arc<FiniteField>,
) -> AlgebraResult<Poly<FFElem>> {
    let one = Poly::constant(var, FFElem::one(field));
    let gen = generator_binding(field);
    eval_expr(expr, &one, &|name| {
        if name == var.name() {
            Some(Poly::variable(var, &FFElem::one(field)))
        } else if name == "x" {
            gen.clone().map(|g| Poly::constant(var, g))
        } else {
            None
        }
    })
}

/// Evaluate as an entry of a tau-matrix: a polynomial in `t` whose
/// coefficients are polynomials in `th` over `field`.
pub fn eval_tau_entry(expr: &Expr, field: &Arc<FiniteField>) -> AlgebraResult<Poly<RatFunc>> {
    let scalar_one = FFElem::one(field);
    let one = Poly::constant(Var::T, RatFunc::one_of(Var::Theta, &scalar_one));
    let gen = generator_binding(field);
    eval_expr(expr, &one, &|name| match name {
        "t" => Some(Poly::variable(Var::T, &RatFunc::one_of(Var::Theta, &scalar_one))),
        "th" => Some(Poly::constant(Var::T, RatFunc::variable(Var::Theta, &scalar_one))),
        "x" => gen
            .clone()
            .map(|g| Poly::constant(Var::T, RatFunc::constant(Var::Theta, g))),
        _ => None,
    })
}

/// Evaluate as a polynomial in `X` with coefficients in `F_q[t]` (the shape
/// of a Frobenius characteristic polynomial).
pub fn eval_x_t_poly(
    expr: &Expr,
    field: &Arc<FiniteField>,
) -> AlgebraResult<Poly<Poly<FFElem>>> {
    let t_one = Poly::constant(Var::T, FFElem::one(field));
    let one = Poly::constant(Var::X, t_one.clone());
    let gen = generator_binding(field);
    eval_expr(expr, &one, &|name| match name {
        "X" => Some(Poly::variable(Var::X, &t_one)),
        "t" => Some(Poly::constant(Var::X, Poly::variable(Var::T, &FFElem::one(field)))),
        "x" => gen
            .clone()
            .map(|g| Poly::constant(Var::X, Poly::constant(Var::T, g))),
        _ => None,
    })
}

// ---------------------------------------------------------------------------
// canonical rendering
// ---------------------------------------------------------------------------

fn is_minus_one(c: &FFElem) -> bool {
    c.field().characteristic() > 2 && *c == FFElem::one(c.field()).neg()
}

fn scalar_string(c: &FFElem) -> (String, bool) {
    let s = c.to_string();
    let multi = s.contains(" + ") || s.contains(" - ");
    (s, multi)
}

/// Render a polynomial with field coefficients, descending powers.
/// A coefficient equal to `-1` on a variable-bearing term becomes a
/// subtraction; bare constants keep their canonical residue form.
pub fn render_scalar_poly(p: &Poly<FFElem>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let var = p.var();
    let mut out = String::new();
    for k in (0..p.coeffs().len()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let minus = k >= 1 && is_minus_one(&c);
        let body = if k == 0 {
            scalar_string(&c).0
        } else {
            let var_pow = if k == 1 {
                var.name().to_string()
            } else {
                format!("{}^{}", var.name(), k)
            };
            if c.is_one() || minus {
                var_pow
            } else {
                let (s, multi) = scalar_string(&c);
                if multi {
                    format!("({s})*{var_pow}")
                } else {
                    format!("{s}*{var_pow}")
                }
            }
        };
        if out.is_empty() {
            if minus {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if minus { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}

fn nonzero_term_count(p: &Poly<FFElem>) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

/// Render a two-level polynomial (outer variable over inner polynomials),
/// descending outer powers.  An inner coefficient whose leading scalar is
/// `-1` is folded into a subtraction of its negation, parenthesized when it
/// has several terms: this prints `X - (t + 2)` instead of `X + 2*t + 1`.
pub fn render_two_level(p: &Poly<Poly<FFElem>>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let var = p.var();
    let mut out = String::new();
    for k in (0..p.coeffs().len()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let degree_positive = c.degree().unwrap_or(0) >= 1;
        let minus = is_minus_one(&c.leading()) && (degree_positive || k >= 1);
        let body_poly = if minus { c.neg() } else { c.clone() };
        let body = render_scalar_poly(&body_poly);
        let multi = nonzero_term_count(&body_poly) > 1;
        let piece = if k == 0 {
            if multi && minus {
                format!("({body})")
            } else {
                body
            }
        } else {
            let var_pow = if k == 1 {
                var.name().to_string()
            } else {
                format!("{}^{}", var.name(), k)
            };
            if body_poly.is_one() {
                var_pow
            } else if multi {
                format!("({body})*{var_pow}")
            } else {
                format!("{body}*{var_pow}")
            }
        };
        if out.is_empty() {
            if minus {
                out.push('-');
            }
            out.push_str(&piece);
        } else {
            out.push_str(if minus { " - " } else { " + " });
            out.push_str(&piece);
        }
    }
    out
}

/// Render a tau-matrix entry.  The entry must be polynomial in `th`.
pub fn render_tau_entry(entry: &Poly<RatFunc>) -> AlgebraResult<String> {
    let mut inner = Vec::with_capacity(entry.coeffs().len());
    for c in entry.coeffs() {
        inner.push(c.as_poly()?);
    }
    Ok(render_two_level(&Poly::new(entry.var(), inner)))
}
