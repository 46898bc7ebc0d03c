//! Parser for cyclotomic expressions: rational literals, `z(M)` for ζ_M
//! (with `M | N`), `^k`, `+ - *`, parentheses. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CycNum, Rational};
use crate::error::Error;

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    n: u32,
}

/// Parses `text` into an element of Q(ζ_n).
pub fn parse_cyc(text: &str, n: u32) -> Result<CycNum, Error> {
    let mut p = Parser {
        src: text,
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
        n,
    };
    if p.chars.is_empty() {
        return Err(p.err("empty expression"));
    }
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::MalformedExpression {
            text: self.src.to_string(),
            reason: reason.to_string(),
        }
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

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<CycNum, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycNum, Error> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.try_mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CycNum, Error> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<CycNum, Error> {
        if self.peek() == Some('z') {
            self.pos += 1;
            self.expect('(')?;
            let m = self.integer()?;
            self.expect(')')?;
            if m == BigInt::zero() {
                return Err(self.err("z(0) is undefined"));
            }
            let m: u64 = m.try_into().map_err(|_| self.err("bad conductor"))?;
            if self.n as u64 % m != 0 {
                return Err(self.err(&format!("z({m}) does not lie in Q(z({}))", self.n)));
            }
            let mut k: u64 = 1;
            if self.eat('^') {
                k = self
                    .integer()?
                    .try_into()
                    .map_err(|_| self.err("bad exponent"))?;
                if k >= m {
                    return Err(Error::ExponentTooLarge { exp: k, n: m as u32 });
                }
            }
            let step = self.n as u64 / m;
            return Ok(CycNum::root_of_unity(self.n, (k * step) as i64));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let k: u32 = self
                .integer()?
                .try_into()
                .map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CycNum, Error> {
        if self.eat('(') {
            let v = self.expr()?;
            self.expect(')')?;
            return Ok(v);
        }
        let num = self.integer()?;
        let den = if self.eat('/') {
            let d = self.integer()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        Ok(CycNum::rational(self.n, Rational::new(num, den)))
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.peek() {
                Some(c) => self.err(&format!("unexpected '{c}'")),
                None => self.err("unexpected end of input"),
            });
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }
}
