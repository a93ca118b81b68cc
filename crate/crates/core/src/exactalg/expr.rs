//! Textual polynomial syntax.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*      division only by nonzero constants
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | "l" | "x" integer | "(" expr ")"
//! ```
//!
//! Rationals therefore parse as `p/q`. Univariate polynomials use the
//! reserved variable `l`; multivariate ones use `x1`, `x2`, ... (one-based).
//! Whitespace is ignored.

use num_bigint::BigInt;

use super::multipoly::MultiPoly;
use super::rational::{rat, Rational};
use super::unipoly::UniPoly;
use crate::error::{JkError, Result};

#[derive(Debug, Clone)]
enum Ast {
    Num(BigInt),
    Lambda,
    Coord(usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn err(&self, msg: &str) -> JkError {
        JkError::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn parse_all(mut self) -> Result<Ast> {
        if self.chars.is_empty() {
            return Err(self.err("empty expression"));
        }
        let e = self.expr()?;
        if self.pos != self.chars.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.eat('^') {
            let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            let e: u32 = d.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(Ast::Num(d.parse().unwrap()))
            }
            Some('l') => {
                self.pos += 1;
                Ok(Ast::Lambda)
            }
            Some('x') => {
                self.pos += 1;
                let d = self.digits().ok_or_else(|| self.err("expected coordinate index after 'x'"))?;
                let i: usize = d.parse().map_err(|_| self.err("bad coordinate index"))?;
                if i == 0 {
                    return Err(self.err("coordinates are numbered from x1"));
                }
                Ok(Ast::Coord(i - 1))
            }
            _ => Err(self.err("unexpected character")),
        }
    }
}

trait Eval: Sized {
    fn num(n: Rational) -> Self;
    fn lambda() -> Result<Self>;
    fn coord(i: usize) -> Result<Self>;
    fn add(a: Self, b: Self) -> Self;
    fn sub(a: Self, b: Self) -> Self;
    fn mul(a: Self, b: Self) -> Self;
    fn as_constant(&self) -> Option<Rational>;
}

impl Eval for UniPoly {
    fn num(n: Rational) -> Self {
        UniPoly::constant(n)
    }
    fn lambda() -> Result<Self> {
        Ok(UniPoly::var())
    }
    fn coord(i: usize) -> Result<Self> {
        Err(JkError::Parse(format!("coordinate x{} not allowed in a polynomial in l", i + 1)))
    }
    fn add(a: Self, b: Self) -> Self {
        &a + &b
    }
    fn sub(a: Self, b: Self) -> Self {
        &a - &b
    }
    fn mul(a: Self, b: Self) -> Self {
        &a * &b
    }
    fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.coeff(0))
    }
}

impl Eval for MultiPoly {
    fn num(n: Rational) -> Self {
        MultiPoly::constant(n)
    }
    fn lambda() -> Result<Self> {
        Err(JkError::Parse("variable l not allowed in a coordinate polynomial".into()))
    }
    fn coord(i: usize) -> Result<Self> {
        Ok(MultiPoly::var(i))
    }
    fn add(a: Self, b: Self) -> Self {
        &a + &b
    }
    fn sub(a: Self, b: Self) -> Self {
        &a - &b
    }
    fn mul(a: Self, b: Self) -> Self {
        &a * &b
    }
    fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(rat(0));
        }
        self.is_constant().then(|| self.terms().next().unwrap().1.clone())
    }
}

fn eval<T: Eval + Clone>(ast: &Ast) -> Result<T> {
    Ok(match ast {
        Ast::Num(n) => T::num(Rational::from_integer(n.clone())),
        Ast::Lambda => T::lambda()?,
        Ast::Coord(i) => T::coord(*i)?,
        Ast::Add(a, b) => T::add(eval(a)?, eval(b)?),
        Ast::Sub(a, b) => T::sub(eval(a)?, eval(b)?),
        Ast::Mul(a, b) => T::mul(eval(a)?, eval(b)?),
        Ast::Neg(a) => T::sub(T::num(rat(0)), eval(a)?),
        Ast::Div(a, b) => {
            let d = eval::<T>(b)?.as_constant().ok_or_else(|| JkError::Parse("division by a non-constant".into()))?;
            if d == rat(0) {
                return Err(JkError::Parse("division by zero".into()));
            }
            T::mul(eval(a)?, T::num(d.recip()))
        }
        Ast::Pow(a, e) => {
            let base: T = eval(a)?;
            let mut acc = T::num(rat(1));
            for _ in 0..*e {
                acc = T::mul(acc, base.clone());
            }
            acc
        }
    })
}

pub fn parse_unipoly(s: &str) -> Result<UniPoly> {
    eval(&Parser::new(s).parse_all()?)
}

pub fn parse_multipoly(s: &str) -> Result<MultiPoly> {
    eval(&Parser::new(s).parse_all()?)
}
