//! Expression syntax for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | name '(' int (',' int)* ')' | '(' expr ')'
//! ```
//! Names are `e`, `m` (unbarred), `mbar` and `x` (coordinates `x(n,k)`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{convert_barred_unbarred, make_generator, x_alias, Direction, Generator, GeneratorKind, Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomName {
    E,
    M,
    Mbar,
    X,
}

impl AtomName {
    fn as_str(self) -> &'static str {
        match self {
            AtomName::E => "e",
            AtomName::M => "m",
            AtomName::Mbar => "mbar",
            AtomName::X => "x",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Atom(AtomName, Vec<i64>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k];
        if c.is_ascii_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let s = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            out.push((s, Tok::Num(text[s..k].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let s = k;
            while k < bytes.len() && bytes[k].is_ascii_alphanumeric() {
                k += 1;
            }
            out.push((s, Tok::Ident(text[s..k].to_string())));
        } else if b"+-*/^(),".contains(&c) {
            out.push((k, Tok::Sym(c as char)));
            k += 1;
        } else {
            let ch = text[k..].chars().next().unwrap();
            return Err(Error::Parse { offset: k, msg: format!("unexpected character {ch:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek() {
                Some(Tok::Num(n)) => {
                    let e = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.peek() {
            Some(Tok::Num(n)) => {
                let v = i64::try_from(n).or_else(|_| self.err("index too large"))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer index"),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let an = match name.as_str() {
                    "e" => AtomName::E,
                    "m" => AtomName::M,
                    "mbar" => AtomName::Mbar,
                    "x" => AtomName::X,
                    _ => return self.err(format!("unknown name {name:?}")),
                };
                self.pos += 1;
                self.expect('(')?;
                let mut idx = vec![self.int()?];
                while self.eat(',') {
                    idx.push(self.int()?);
                }
                self.expect(')')?;
                resolve(an, &idx).map_err(|e| Error::Parse { offset: start, msg: e.to_string() })?;
                Ok(Expr::Atom(an, idx))
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn resolve(name: AtomName, idx: &[i64]) -> Result<Generator> {
    match (name, idx) {
        (AtomName::E, _) => make_generator(GeneratorKind::Classical, idx),
        (AtomName::M | AtomName::Mbar, _) => make_generator(GeneratorKind::Twisted, idx),
        (AtomName::X, &[n, k]) => x_alias(n, k),
        (AtomName::X, _) => Err(Error::IndexRange("x takes 2 indices".into())),
    }
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos < toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self) -> Result<Polynomial> {
        Ok(match self {
            Expr::Num(n) => Polynomial::constant(Rational::from_integer(n.clone())),
            Expr::Atom(name, idx) => {
                let g = Polynomial::gen(resolve(*name, idx)?);
                if *name == AtomName::M {
                    convert_barred_unbarred(&g, Direction::ToBarred)
                } else {
                    g
                }
            }
            Expr::Add(a, b) => a.eval()? + b.eval()?,
            Expr::Sub(a, b) => a.eval()? - b.eval()?,
            Expr::Mul(a, b) => a.eval()? * b.eval()?,
            Expr::Div(a, b) => {
                let den = b.eval()?;
                let c = constant_of(&den).ok_or_else(|| Error::IndexRange("can only divide by a nonzero constant".into()))?;
                a.eval()?.scale(&(Rational::one() / c))
            }
            Expr::Neg(a) => -a.eval()?,
            Expr::Pow(a, e) => a.eval()?.pow(*e),
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Atom(..) => 5,
        }
    }
}

fn constant_of(p: &Polynomial) -> Option<Rational> {
    let mut it = p.terms();
    match (it.next(), it.next()) {
        (Some((m, c)), None) if m.is_one() && !c.is_zero() => Some(c.clone()),
        _ => None,
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Atom(name, idx) => {
                let s: Vec<String> = idx.iter().map(|v| v.to_string()).collect();
                write!(f, "{}({})", name.as_str(), s.join(","))
            }
            // left-associative: the right operand needs strictly higher precedence
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { '*' } else { '/' })?;
                wrap(f, b, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str) -> Polynomial {
        parse_expression(s).unwrap().eval().unwrap()
    }

    #[test]
    fn alias_and_bidegree() {
        assert_eq!(eval("x(3,2)"), eval("mbar(1,2)"));
        assert_eq!(eval("x(3,0)"), eval("e(2)"));
        let p = eval("mbar(0,3) - 2*mbar(0,2)*mbar(1,1)");
        assert_eq!(p.len(), 2);
        assert_eq!(p.bidegree(), Some(crate::algebra::Bidegree::new(1, 3)));
    }

    #[test]
    fn unbarred_atoms() {
        assert_eq!(eval("m(0,3)"), eval("-6*mbar(0,3)"));
        assert_eq!(eval("m(2,1)"), eval("-mbar(2,1)"));
    }

    #[test]
    fn precedence() {
        assert_eq!(eval("-e(1)^2"), eval("-(e(1)^2)"));
        assert_eq!(eval("e(1) - e(2) - e(3)"), eval("(e(1) - e(2)) - e(3)"));
        assert_eq!(eval("1/2*e(1)"), eval("e(1)/2"));
        assert_eq!(parse_expression("2*-e(1)").unwrap().to_string(), "2*-e(1)");
    }

    #[test]
    fn errors_carry_offsets() {
        let err = |s: &str| match parse_expression(s) {
            Err(Error::Parse { offset, msg }) => (offset, msg),
            other => panic!("{other:?}"),
        };
        let (o, msg) = err("e(0)");
        assert_eq!(o, 0);
        assert!(msg.contains("inadmissible generator"), "{msg}");
        assert_eq!(err("e(1) + mbar(0,1)").0, 7);
        assert!(err("e(-1)").1.contains("inadmissible"));
        assert_eq!(err("(e(1)").0, 5);
        assert_eq!(err("e(1) $").0, 5);
        assert_eq!(err("e(1) e(2)").0, 5);
        assert_eq!(err("q(1)").0, 0);
    }

    #[test]
    fn print_round_trip() {
        for s in ["e(1) - (e(2) - e(3))", "-(e(1) + e(2))^3", "x(4,2)*m(0,2)/3", "(2*e(1))^2 - -e(2)", "e(1)-e(2)*e(3)^2"] {
            let a = parse_expression(s).unwrap();
            let b = parse_expression(&a.to_string()).unwrap();
            assert_eq!(a, b, "{s}");
        }
    }
}
