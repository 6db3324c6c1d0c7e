//! Text form for polynomials and exact scalars.
//!
//! Polynomials print as a sum of terms `c * a2^e2 * a3^e3` in decreasing
//! grevlex order with rationals written `p/q`; the parser accepts that output
//! and general arithmetic expressions (`+ - * / ^`, parentheses, `sqrt(n)`).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::multipoly::{MultiPoly, Ring};
use super::rat::{format_rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '\u{2212}' {
            // unicode minus
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Var(String),
    Sqrt(Box<Expr>),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op('/') {
                lhs = Expr::Bin('/', Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(&n)
                        .map_err(|_| Error::Parse(format!("exponent {n} too large")))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "sqrt" {
                    if !self.eat_op('(') {
                        return Err(Error::Parse("expected '(' after sqrt".into()));
                    }
                    let inner = self.expr()?;
                    if !self.eat_op(')') {
                        return Err(Error::Parse("expected ')'".into()));
                    }
                    Ok(Expr::Sqrt(Box::new(inner)))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

/// Target algebra for evaluating a parsed expression.
pub(crate) trait Algebra {
    type V: Clone;
    fn int(&self, n: &BigInt) -> Self::V;
    fn var(&self, name: &str) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn pow(&self, a: &Self::V, n: u32) -> Result<Self::V>;
    fn sqrt(&self, a: &Self::V) -> Result<Self::V>;
}

fn eval<A: Algebra>(alg: &A, e: &Expr) -> Result<A::V> {
    match e {
        Expr::Num(n) => Ok(alg.int(n)),
        Expr::Var(v) => alg.var(v),
        Expr::Sqrt(x) => alg.sqrt(&eval(alg, x)?),
        Expr::Neg(x) => Ok(alg.neg(&eval(alg, x)?)),
        Expr::Pow(x, n) => alg.pow(&eval(alg, x)?, *n),
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval(alg, a)?, eval(alg, b)?);
            match op {
                '+' => alg.add(&a, &b),
                '-' => alg.sub(&a, &b),
                '*' => alg.mul(&a, &b),
                '/' => alg.div(&a, &b),
                _ => unreachable!(),
            }
        }
    }
}

pub(crate) fn parse_with<A: Algebra>(alg: &A, s: &str) -> Result<A::V> {
    eval(alg, &parse_expr(s)?)
}

struct PolyAlgebra<'r> {
    ring: &'r Arc<Ring>,
}

impl Algebra for PolyAlgebra<'_> {
    type V = MultiPoly;
    fn int(&self, n: &BigInt) -> MultiPoly {
        MultiPoly::constant(self.ring, Rat::from_integer(n.clone()))
    }
    fn var(&self, name: &str) -> Result<MultiPoly> {
        MultiPoly::var_named(self.ring, name)
            .map_err(|_| Error::Parse(format!("unknown variable {name:?} for ring {}", self.ring.describe())))
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        a.checked_add(b)
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        a.checked_sub(b)
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        a.checked_mul(b)
    }
    fn div(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        if !b.is_constant() || b.is_zero() {
            return Err(Error::Parse("polynomials may only be divided by nonzero constants".into()));
        }
        Ok(a.scale(&(Rat::one() / b.constant_term())))
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }
    fn pow(&self, a: &MultiPoly, n: u32) -> Result<MultiPoly> {
        Ok(a.pow(n))
    }
    fn sqrt(&self, _a: &MultiPoly) -> Result<MultiPoly> {
        Err(Error::Parse("sqrt is not allowed in polynomial text".into()))
    }
}

/// Parse a polynomial over `ring`.
pub fn parse_poly(ring: &Arc<Ring>, s: &str) -> Result<MultiPoly> {
    parse_with(&PolyAlgebra { ring }, s)
}

/// Parse a rational expression such as `-3/4` or `(1+2)/6`.
pub fn parse_rational_expr(s: &str) -> Result<Rat> {
    let ring = Ring::new(Vec::<String>::new())?;
    let p = parse_poly(&ring, s)?;
    Ok(p.constant_term())
}

fn format_monomial(ring: &Ring, m: &super::Monomial) -> String {
    let mut parts = Vec::new();
    for i in 0..ring.nvars() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(ring.var_name(i).to_string()),
            e => parts.push(format!("{}^{}", ring.var_name(i), e)),
        }
    }
    parts.join(" * ")
}

fn format_term(ring: &Ring, m: &super::Monomial, c: &Rat) -> String {
    if m.is_one() {
        return format_rat(c);
    }
    let mono = format_monomial(ring, m);
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{} * {}", format_rat(c), mono)
    }
}

pub fn format_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let ring = p.ring();
    let mut s = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        if k == 0 {
            s.push_str(&format_term(ring, m, c));
        } else if c.is_negative() {
            s.push_str(" - ");
            s.push_str(&format_term(ring, m, &-c));
        } else {
            s.push_str(" + ");
            s.push_str(&format_term(ring, m, c));
        }
    }
    s
}

/// Helper for callers that build polynomials from integer literals.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one() || r.numer().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat::{int, rat};

    #[test]
    fn print_v3_and_parse_back() {
        let r = Ring::a_family(3);
        let v3 = parse_poly(&r, "-2*a2^2 - 2*a3").unwrap();
        assert_eq!(format_poly(&v3), "-2 * a2^2 - 2 * a3");
        assert_eq!(parse_poly(&r, &format_poly(&v3)).unwrap(), v3);
    }

    #[test]
    fn rational_coefficients() {
        let r = Ring::a_family(9);
        let s = "242/17 * a2 * a3 * a6 - 121/17 * a2*a4*a5 - 2*a9";
        let p = parse_poly(&r, s).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(parse_poly(&r, &p.to_string()).unwrap(), p);
        assert_eq!(parse_rational_expr("(1+2)/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational_expr("-4").unwrap(), int(-4));
    }

    #[test]
    fn parse_errors() {
        let r = Ring::a_family(3);
        assert!(parse_poly(&r, "a7").is_err());
        assert!(parse_poly(&r, "a2 +").is_err());
        assert!(parse_poly(&r, "1/a2").is_err());
        assert!(parse_poly(&r, "sqrt(2)").is_err());
    }
}
