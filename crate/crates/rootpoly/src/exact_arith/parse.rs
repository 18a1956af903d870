//! Reader for the scalar text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | juxtaposed factor)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! exponent := ['-'] int | '(' ['-'] int ['/' int] ')'
//! atom   := int | symbol | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::poly::Var;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[st..i].iter().collect();
            out.push(Tok::Int(lit.parse().map_err(|_| Error::Parse(lit.clone()))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Sym(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {:?}", c)));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

enum Atom {
    Sym(Var),
    Val(Scalar),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d)?;
            } else if matches!(self.peek(), Some(Tok::Op('(')) | Some(Tok::Sym(_))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else {
            self.power()
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let v: i64 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(Error::Parse("expected integer exponent".into())),
        }
    }

    /// Exponent in half-units.
    fn exponent(&mut self) -> Result<i64> {
        if self.eat('(') {
            let n = self.int()?;
            let e = if self.eat('/') {
                match self.int()? {
                    1 => 2 * n,
                    2 => n,
                    d => return Err(Error::Parse(format!("exponent denominator {} not supported", d))),
                }
            } else {
                2 * n
            };
            if !self.eat(')') {
                return Err(Error::Parse("expected ')'".into()));
            }
            Ok(e)
        } else {
            Ok(2 * self.int()?)
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let a = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            match a {
                Atom::Sym(v) => Ok(Scalar::var_pow(v, e as i32)),
                Atom::Val(s) => {
                    if e % 2 != 0 {
                        return Err(Error::Parse("half-integral power of a compound expression".into()));
                    }
                    s.pow(e / 2)
                }
            }
        } else {
            Ok(match a {
                Atom::Sym(v) => Scalar::var(v),
                Atom::Val(s) => s,
            })
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Atom::Val(Scalar::from_rational(num_rational::BigRational::from_integer(n))))
            }
            Some(Tok::Sym(s)) => {
                self.pos += 1;
                Var::from_name(&s).map(Atom::Sym).ok_or_else(|| Error::Parse(format!("unknown symbol {}", s)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(Atom::Val(e))
            }
            other => Err(Error::Parse(format!("unexpected token {:?}", other))),
        }
    }
}

/// Parse a scalar expression such as `(1+q)(1-t)/(1-q*t)` or `q^(1/2)`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_juxtaposition_and_half_powers() {
        let a = parse_scalar("(1+q)(1-t)/(1-q*t)").unwrap();
        let b = parse_scalar("(1+q-t-q*t)/(1-q*t)").unwrap();
        assert_eq!(a, b);
        let h = parse_scalar("q^(1/2)*q^(1/2)").unwrap();
        assert_eq!(h, parse_scalar("q").unwrap());
        assert_eq!(parse_scalar("q^-2").unwrap().render(), "1/q^2");
        assert_eq!(parse_scalar("-3/4").unwrap(), Scalar::from_ratio(-3, 4));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("q +").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("(q+1)^(1/2)").is_err());
    }
}
