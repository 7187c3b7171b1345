//! A small arithmetic expression language for stating identities.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' integer)?
//! base   := number | 'pi' | func '(' expr ')' | '(' expr ')' | '-' base
//! func   := sqrt | cbrt | cos | sin | arctan
//! ```
//!
//! Exponents are integers only; fractional powers go through `sqrt` and
//! `cbrt`, and `cbrt` is the real branch.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::precision::HighReal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sqrt,
    Cbrt,
    Cos,
    Sin,
    Arctan,
}

impl Func {
    pub const ALL: [Func; 5] = [Func::Sqrt, Func::Cbrt, Func::Cos, Func::Sin, Func::Arctan];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Cbrt => "cbrt",
            Func::Cos => "cos",
            Func::Sin => "sin",
            Func::Arctan => "arctan",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

/// A decimal literal, kept as written (`digits / 10^scale`) so printing
/// reproduces the same tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decimal {
    pub digits: BigUint,
    pub scale: u32,
}

impl Decimal {
    pub fn integer(n: u64) -> Self {
        Decimal { digits: n.into(), scale: 0 }
    }

    pub fn to_ratio(&self) -> BigRational {
        let den = num_traits::pow(BigInt::from(10), self.scale as usize);
        BigRational::new(BigInt::from(self.digits.clone()), den)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.digits.to_string();
        let scale = self.scale as usize;
        if scale == 0 {
            return f.write_str(&text);
        }
        let padded = format!("{text:0>width$}", width = scale + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - scale);
        write!(f, "{int_part}.{frac_part}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expression {
    Number(Decimal),
    Pi,
    Call(Func, Box<Expression>),
    Neg(Box<Expression>),
    Binary(BinOp, Box<Expression>, Box<Expression>),
    Pow(Box<Expression>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: expected {}", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
}

pub fn parse_expression(text: &str) -> Result<Expression, ParseError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error(&["operator", "end of input"]));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError { offset: self.pos, expected: expected.to_vec() }
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expression::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expression::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expression, ParseError> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["integer exponent"]));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let magnitude: i64 =
            text.parse().map_err(|_| ParseError { offset: start, expected: vec!["exponent that fits in 64 bits"] })?;
        Ok(Expression::Pow(Box::new(base), if negative { -magnitude } else { magnitude }))
    }

    fn base(&mut self) -> Result<Expression, ParseError> {
        const EXPECTED: &[&str] = &["number", "pi", "function", "(", "-"];
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expression::Neg(Box::new(self.base()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error(&[")"]));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => self.number(),
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "pi" {
                    return Ok(Expression::Pi);
                }
                let func = Func::from_name(name);
                if func.is_none() && name != "neg" {
                    return Err(ParseError { offset: start, expected: EXPECTED.to_vec() });
                }
                if !self.eat(b'(') {
                    return Err(self.error(&["("]));
                }
                let arg = Box::new(self.expr()?);
                if !self.eat(b')') {
                    return Err(self.error(&[")"]));
                }
                // `neg(x)` is another spelling of `-x`
                Ok(match func {
                    Some(func) => Expression::Call(func, arg),
                    None => Expression::Neg(arg),
                })
            }
            _ => Err(self.error(EXPECTED)),
        }
    }

    fn number(&mut self) -> Result<Expression, ParseError> {
        let digits_from = |p: &mut Self| {
            let start = p.pos;
            while p.src.get(p.pos).is_some_and(u8::is_ascii_digit) {
                p.pos += 1;
            }
            std::str::from_utf8(&p.src[start..p.pos]).expect("ascii digits").to_owned()
        };
        let int_part = digits_from(self);
        let mut frac_part = String::new();
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac_part = digits_from(self);
            if frac_part.is_empty() {
                return Err(self.error(&["digit"]));
            }
        }
        let all = format!("{int_part}{frac_part}");
        let digits = BigUint::parse_bytes(all.as_bytes(), 10).ok_or_else(|| self.error(&["digit"]))?;
        Ok(Expression::Number(Decimal { digits, scale: frac_part.len() as u32 }))
    }
}

impl Expression {
    pub fn int(n: u64) -> Self {
        Expression::Number(Decimal::integer(n))
    }

    /// Evaluates at `digits` of working precision.
    pub fn evaluate(&self, digits: u32) -> Result<HighReal> {
        let domain = |msg: String| Error::EvaluationDomainError(msg);
        Ok(match self {
            Expression::Number(d) => HighReal::from_ratio(&d.to_ratio(), digits),
            Expression::Pi => HighReal::pi(digits),
            Expression::Neg(inner) => -inner.evaluate(digits)?,
            Expression::Call(func, arg) => {
                let x = arg.evaluate(digits)?;
                match func {
                    Func::Sqrt => {
                        x.checked_sqrt().ok_or_else(|| domain(format!("sqrt of negative value in `{self}`")))?
                    }
                    Func::Cbrt => x.cbrt(),
                    Func::Cos => x.cos(),
                    Func::Sin => x.sin(),
                    Func::Arctan => x.atan(),
                }
            }
            Expression::Binary(op, lhs, rhs) => {
                let a = lhs.evaluate(digits)?;
                let b = rhs.evaluate(digits)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a.checked_div(&b).ok_or_else(|| domain(format!("division by zero in `{self}`")))?,
                }
            }
            Expression::Pow(base, exp) => {
                let x = base.evaluate(digits)?;
                if *exp < 0 && x.is_zero() {
                    return Err(domain(format!("zero to a negative power in `{self}`")));
                }
                x.powi(*exp)
            }
        })
    }

    fn write_expr(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Binary(op @ (BinOp::Add | BinOp::Sub), lhs, rhs) => {
                lhs.write_expr(f)?;
                write!(f, "{}", op.symbol())?;
                rhs.write_term(f)
            }
            _ => self.write_term(f),
        }
    }

    fn write_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Binary(BinOp::Add | BinOp::Sub, ..) => self.write_parenthesized(f),
            Expression::Binary(op, lhs, rhs) => {
                lhs.write_term(f)?;
                write!(f, "{}", op.symbol())?;
                rhs.write_factor(f)
            }
            _ => self.write_factor(f),
        }
    }

    fn write_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Pow(base, exp) => {
                base.write_base(f)?;
                write!(f, "^{exp}")
            }
            _ => self.write_base(f),
        }
    }

    fn write_base(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Number(d) => write!(f, "{d}"),
            Expression::Pi => f.write_str("pi"),
            Expression::Call(func, arg) => {
                write!(f, "{}(", func.name())?;
                arg.write_expr(f)?;
                f.write_str(")")
            }
            Expression::Neg(inner) => {
                f.write_str("-")?;
                inner.write_base(f)
            }
            Expression::Binary(..) | Expression::Pow(..) => self.write_parenthesized(f),
        }
    }

    fn write_parenthesized(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        self.write_expr(f)?;
        f.write_str(")")
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_expr(f)
    }
}

impl std::str::FromStr for Expression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_expression(s)
    }
}

/// Splits `"<lhs> == <rhs>"` and parses both sides.
pub fn parse_equation(text: &str) -> Result<(Expression, Expression), ParseError> {
    let Some(split) = text.find("==") else {
        return Err(ParseError { offset: text.len(), expected: vec!["=="] });
    };
    let lhs = parse_expression(&text[..split])?;
    let rhs = parse_expression(&text[split + 2..]).map_err(|e| ParseError { offset: e.offset + split + 2, ..e })?;
    Ok((lhs, rhs))
}
