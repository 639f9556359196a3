//! Textual polynomial grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' nat)?
//! base   := integer | varname | 'w' | '(' expr ')'
//! ```
//!
//! `w` is reserved for the primitive cube root of unity ω. Division is only
//! accepted by nonzero constants. Whitespace is insignificant.

use std::sync::Arc;

use num::bigint::BigInt;

use super::{MultiPoly, PolyRing};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Parsed expression tree; positions are byte columns (1-based) within the
/// parsed line.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String, usize),
    Omega(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Variable names in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v, _) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Int(_) | Expr::Omega(_) => {}
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn uses_omega(&self) -> bool {
        match self {
            Expr::Omega(_) => true,
            Expr::Int(_) | Expr::Var(..) => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses_omega(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.uses_omega() || b.uses_omega()
            }
        }
    }

    /// Evaluates the tree in a polynomial ring. `line` is used for error
    /// positions.
    pub fn to_poly<F: Field>(&self, ring: &Arc<PolyRing<F>>, line: usize) -> Result<MultiPoly<F>> {
        let field = ring.field();
        Ok(match self {
            Expr::Int(n) => MultiPoly::constant(ring, field.from_bigint(n)),
            Expr::Var(v, col) => MultiPoly::var(ring, v).map_err(|_| Error::Parse {
                line,
                col: *col,
                msg: format!("unknown variable `{v}`"),
            })?,
            Expr::Omega(col) => match field.omega() {
                Some(w) => MultiPoly::constant(ring, w),
                None => {
                    return Err(Error::Parse {
                        line,
                        col: *col,
                        msg: format!("`w` is not available over {}", field.name()),
                    })
                }
            },
            Expr::Neg(a) => -a.to_poly(ring, line)?,
            Expr::Add(a, b) => a.to_poly(ring, line)?.checked_add(&b.to_poly(ring, line)?)?,
            Expr::Sub(a, b) => a.to_poly(ring, line)?.checked_sub(&b.to_poly(ring, line)?)?,
            Expr::Mul(a, b) => a.to_poly(ring, line)?.checked_mul(&b.to_poly(ring, line)?)?,
            Expr::Div(a, b, col) => {
                let den = b.to_poly(ring, line)?;
                let c = den.constant_value().filter(|c| !field.is_zero(c)).ok_or_else(|| Error::Parse {
                    line,
                    col: *col,
                    msg: "division is only allowed by a nonzero constant".into(),
                })?;
                let inv = field.inv(&c).map_err(|_| Error::Parse {
                    line,
                    col: *col,
                    msg: "divisor is not invertible".into(),
                })?;
                a.to_poly(ring, line)?.scale(&inv)
            }
            Expr::Pow(a, e) => a.to_poly(ring, line)?.pow(*e),
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, col: self.pos + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    let col = self.pos + 1;
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), col);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected a natural-number exponent after `^`");
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = match s.parse() {
                Ok(e) if e <= u16::MAX as u32 => e,
                _ => {
                    self.pos = start;
                    return self.err("exponent too large");
                }
            };
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Expr::Int(s.parse().expect("digits parse as an integer")))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if s == "w" {
                    Ok(Expr::Omega(start + 1))
                } else {
                    Ok(Expr::Var(s.to_string(), start + 1))
                }
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
        }
    }
}

/// Parses one expression; `line` is reported in errors.
pub fn parse_expr_at(src: &str, line: usize) -> Result<Expr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, line };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    parse_expr_at(src, 1)
}

pub fn parse_poly<F: Field>(ring: &Arc<PolyRing<F>>, src: &str) -> Result<MultiPoly<F>> {
    parse_expr(src)?.to_poly(ring, 1)
}

/// Splits a file into `(line number, expression)` pairs: one polynomial per
/// line, `#` starts a comment, blank lines are skipped and a trailing `,` or
/// `;` is ignored.
pub fn parse_expr_lines(text: &str) -> Result<Vec<(usize, Expr)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let body = body.trim_end();
        let body = body.strip_suffix([',', ';']).unwrap_or(body);
        if body.trim().is_empty() {
            continue;
        }
        out.push((i + 1, parse_expr_at(body, i + 1)?));
    }
    Ok(out)
}

pub fn parse_poly_list<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Vec<MultiPoly<F>>> {
    parse_expr_lines(text)?
        .into_iter()
        .map(|(line, e)| e.to_poly(ring, line))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::OrderKind;
    use crate::scalar::{CyclotomicField, Rationals};

    #[test]
    fn parses_the_documented_example() {
        let r = PolyRing::new(CyclotomicField, &["u", "v", "x", "y", "a", "b"], OrderKind::Lex).unwrap();
        let p = parse_poly(&r, "18*x*v*(v-1)*(v*x-y^2)*(v*x-w*y^2)").unwrap();
        assert_eq!(p.total_degree(), 7);
        assert_eq!(p.degree_in(1), 4);
    }

    #[test]
    fn error_positions() {
        let r = PolyRing::new(Rationals, &["x", "y"], OrderKind::Lex).unwrap();
        match parse_poly(&r, "x + * y") {
            Err(Error::Parse { line: 1, col: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly(&r, "x + z") {
            Err(Error::Parse { col: 5, msg, .. }) => assert!(msg.contains("unknown variable")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly(&r, "w*x"), Err(Error::Parse { col: 1, .. })));
        assert!(matches!(parse_poly(&r, "x/y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&r, "(x+y"), Err(Error::Parse { .. })));
        let text = "x^2 - 1\n# comment\n\nx*y - 1,\nx +\n";
        match parse_poly_list(&r, text) {
            Err(Error::Parse { line: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn variables_in_order_of_appearance() {
        let e = parse_expr("y*x + 2*z^3 - y").unwrap();
        assert_eq!(e.variables(), vec!["y", "x", "z"]);
        assert!(!e.uses_omega());
        assert!(parse_expr("1 + w").unwrap().uses_omega());
    }
}
